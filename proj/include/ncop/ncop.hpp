#ifndef NCOP_NCOP_HPP
#define NCOP_NCOP_HPP

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/io.hpp"
#include "ncop/jacobi.hpp"
#include "ncop/opeval.hpp"
#include "ncop/operator_tuple.hpp"
#include "ncop/orthopoly.hpp"
#include "ncop/random.hpp"
#include "ncop/recurrence.hpp"
#include "ncop/words.hpp"

#endif  // NCOP_NCOP_HPP
