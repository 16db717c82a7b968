#pragma once

#include "sqz/kernels.hpp"

namespace sqz::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(SQZ_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(SQZ_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace sqz::kernels::detail
