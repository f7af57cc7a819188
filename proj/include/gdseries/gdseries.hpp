#pragma once

#include "algnum.hpp"
#include "asymptotics.hpp"
#include "calibration.hpp"
#include "coeffgf.hpp"
#include "egf.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "families.hpp"
#include "golden.hpp"
#include "io.hpp"
#include "marked.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "transfer.hpp"
#include "verify.hpp"
