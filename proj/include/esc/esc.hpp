#pragma once

#include "esc/arith.hpp"
#include "esc/core.hpp"
#include "esc/oracle.hpp"
#include "esc/scanner.hpp"
#include "esc/solver_a.hpp"
#include "esc/solver_b.hpp"
