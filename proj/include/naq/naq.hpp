#pragma once

#include "naq/backstop.hpp"
#include "naq/bidiff.hpp"
#include "naq/bivector.hpp"
#include "naq/bracket_checks.hpp"
#include "naq/certificates.hpp"
#include "naq/error.hpp"
#include "naq/expr.hpp"
#include "naq/gauge.hpp"
#include "naq/identities.hpp"
#include "naq/lambda_series.hpp"
#include "naq/multi_index.hpp"
#include "naq/parser.hpp"
#include "naq/polynomial.hpp"
#include "naq/random.hpp"
#include "naq/rational.hpp"
#include "naq/session.hpp"
#include "naq/star_product.hpp"
#include "naq/sweep.hpp"
#include "naq/version.hpp"
