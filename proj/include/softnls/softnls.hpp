#pragma once

#include "softnls/error.hpp"
#include "softnls/json_io.hpp"
#include "softnls/norms.hpp"
#include "softnls/operator.hpp"
#include "softnls/operator_checks.hpp"
#include "softnls/opnorm.hpp"
#include "softnls/random.hpp"
#include "softnls/report.hpp"
#include "softnls/sequences.hpp"
#include "softnls/soft_core.hpp"
#include "softnls/soft_vector.hpp"
#include "softnls/verify.hpp"
