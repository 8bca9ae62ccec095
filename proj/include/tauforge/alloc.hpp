#pragma once

namespace tauforge {

// Routes small GMP limb blocks through thread-local freelist slabs instead of
// malloc; exact rational arithmetic churns through millions of such blocks.
// Idempotent, installed once per process; returns true once active.
bool use_gmp_block_pool();

}  // namespace tauforge
