#pragma once

#include "rseven/arith_core.hpp"
#include "rseven/congruence.hpp"
#include "rseven/errors.hpp"
#include "rseven/even_algebra.hpp"
#include "rseven/holder.hpp"
#include "rseven/number.hpp"
#include "rseven/ramanujan.hpp"
#include "rseven/serialize.hpp"
