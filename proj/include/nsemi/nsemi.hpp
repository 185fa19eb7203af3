#pragma once

#include "nsemi/algebra.hpp"
#include "nsemi/boolcls.hpp"
#include "nsemi/enumerate.hpp"
#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"
#include "nsemi/json_io.hpp"
#include "nsemi/mlpoly.hpp"
#include "nsemi/naive.hpp"
