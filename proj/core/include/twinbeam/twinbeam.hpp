#pragma once

#include "twinbeam/analysis.hpp"
#include "twinbeam/dynamics.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/feedback.hpp"
#include "twinbeam/light.hpp"
#include "twinbeam/master.hpp"
#include "twinbeam/oracle.hpp"
#include "twinbeam/superop.hpp"
