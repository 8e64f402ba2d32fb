#ifndef ARITH_TQFT_ARITH_TQFT_HPP
#define ARITH_TQFT_ARITH_TQFT_HPP

#include "arith_tqft/error.hpp"
#include "arith_tqft/units.hpp"
#include "arith_tqft/modular.hpp"
#include "arith_tqft/matrix.hpp"
#include "arith_tqft/cobordism.hpp"
#include "arith_tqft/relations.hpp"
#include "arith_tqft/universal.hpp"
#include "arith_tqft/frobenius.hpp"
#include "arith_tqft/pgroup.hpp"
#include "arith_tqft/chartab.hpp"
#include "arith_tqft/dw.hpp"
#include "arith_tqft/oracle.hpp"

#endif  // ARITH_TQFT_ARITH_TQFT_HPP
