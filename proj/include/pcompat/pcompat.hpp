#pragma once

#include "pcompat/connection.hpp"
#include "pcompat/forms.hpp"
#include "pcompat/parser.hpp"
#include "pcompat/poisson.hpp"
#include "pcompat/polynomial.hpp"
#include "pcompat/report_json.hpp"
#include "pcompat/sampling.hpp"
#include "pcompat/scalar_field.hpp"
#include "pcompat/verify.hpp"
#include "pcompat/zero_test.hpp"
