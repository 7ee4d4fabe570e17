#pragma once

#include "focklab/errors.hpp"
#include "focklab/log_value.hpp"
#include "focklab/rational.hpp"
#include "focklab/weight_expr.hpp"
#include "focklab/growth_profile.hpp"
#include "focklab/weights.hpp"
#include "focklab/hdr_complex.hpp"
#include "focklab/entire.hpp"
#include "focklab/operators.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/norms.hpp"
#include "focklab/criteria.hpp"
#include "focklab/covering.hpp"
#include "focklab/local_estimates.hpp"
