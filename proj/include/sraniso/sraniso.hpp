#pragma once

/// Everything except the JSON loader (sraniso/complex_io.hpp), which needs the vendored json.hpp.

#include "sraniso/anisotropy.hpp"
#include "sraniso/artinian.hpp"
#include "sraniso/bracket.hpp"
#include "sraniso/complex.hpp"
#include "sraniso/diffop.hpp"
#include "sraniso/error.hpp"
#include "sraniso/finite_field.hpp"
#include "sraniso/graded.hpp"
#include "sraniso/lefschetz.hpp"
#include "sraniso/linalg.hpp"
#include "sraniso/polynomial.hpp"
#include "sraniso/psi.hpp"
#include "sraniso/rational.hpp"
#include "sraniso/sampling.hpp"
