#include "tauforge/alloc.hpp"

#include <gmp.h>

#include <cstdlib>
#include <cstring>
#include <vector>

namespace tauforge {
namespace {

// GMP reports the exact block size to its realloc and free hooks, so the size
// alone decides whether a block is pooled. Small blocks come from per-thread
// slabs and recycle through freelists; a block freed on another thread joins
// that thread's list, and slabs are never unmapped, so ownership transfer is
// harmless. Blocks that predate the hook installation were malloc'd; they are
// absorbed into the pool on free rather than handed back to libc, which is
// safe for the same reason.

constexpr std::size_t kMaxPooled = 64;
constexpr std::size_t kBuckets = kMaxPooled / 8;
constexpr std::size_t kSlabBytes = std::size_t{1} << 18;

struct Pool {
  void* free_list[kBuckets] = {};
  std::vector<unsigned char*> slabs;
  unsigned char* cur = nullptr;
  std::size_t left = 0;

  void* take(std::size_t bucket) {
    if (void* p = free_list[bucket]) {
      free_list[bucket] = *static_cast<void**>(p);
      return p;
    }
    std::size_t bytes = (bucket + 1) * 8;
    if (left < bytes) {
      auto* slab = static_cast<unsigned char*>(std::malloc(kSlabBytes));
      if (!slab) std::abort();
      slabs.push_back(slab);
      cur = slab;
      left = kSlabBytes;
    }
    void* p = cur;
    cur += bytes;
    left -= bytes;
    return p;
  }

  void give(void* p, std::size_t bucket) {
    *static_cast<void**>(p) = free_list[bucket];
    free_list[bucket] = p;
  }
};

// Leaked deliberately: static and thread_local destructors may still free GMP
// values after this thread's cleanup has begun.
Pool& pool() {
  thread_local Pool* p = new Pool;
  return *p;
}

std::size_t bucket_of(std::size_t size) { return (size + 7) / 8 - 1; }

void* pool_alloc(std::size_t size) {
  if (size == 0) size = 1;
  if (size <= kMaxPooled) return pool().take(bucket_of(size));
  return std::malloc(size);
}

void* pool_realloc(void* p, std::size_t old_size, std::size_t new_size) {
  bool old_pooled = old_size <= kMaxPooled, new_pooled = new_size <= kMaxPooled;
  if (old_pooled && new_pooled && bucket_of(old_size) == bucket_of(new_size)) return p;
  if (!old_pooled && !new_pooled) return std::realloc(p, new_size);
  void* q = pool_alloc(new_size);
  std::memcpy(q, p, old_size < new_size ? old_size : new_size);
  if (old_pooled)
    pool().give(p, bucket_of(old_size));
  else
    std::free(p);
  return q;
}

void pool_free(void* p, std::size_t size) {
  if (size <= kMaxPooled)
    pool().give(p, bucket_of(size));
  else
    std::free(p);
}

}  // namespace

bool use_gmp_block_pool() {
  static const bool installed = [] {
    mp_set_memory_functions(&pool_alloc, &pool_realloc, &pool_free);
    return true;
  }();
  return installed;
}

}  // namespace tauforge
