#pragma once

#include "dnzeta/errors.hpp"
#include "dnzeta/numeric.hpp"
#include "dnzeta/specfun.hpp"
#include "dnzeta/report.hpp"
#include "dnzeta/zeta_reg.hpp"
#include "dnzeta/dn_explicit.hpp"
#include "dnzeta/hyperbolic.hpp"
#include "dnzeta/zeta_dyn.hpp"
#include "dnzeta/det_engine.hpp"
#include "dnzeta/numeric_dn.hpp"
#include "dnzeta/verify.hpp"
