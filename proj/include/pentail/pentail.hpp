#pragma once

#include "pentail/attr_set.hpp"
#include "pentail/dataset.hpp"
#include "pentail/decide.hpp"
#include "pentail/entailment.hpp"
#include "pentail/errors.hpp"
#include "pentail/gamma_star.hpp"
#include "pentail/homogeneity.hpp"
#include "pentail/implication.hpp"
#include "pentail/lp.hpp"
#include "pentail/rational.hpp"
#include "pentail/rules_io.hpp"
#include "pentail/signature.hpp"
