#pragma once

#include "sio/curve.hpp"
#include "sio/exponent.hpp"
#include "sio/fredholm.hpp"
#include "sio/horn.hpp"
#include "sio/io.hpp"
#include "sio/operator_expr.hpp"
#include "sio/pc_symbol.hpp"
#include "sio/problem.hpp"
#include "sio/submult.hpp"
#include "sio/svg.hpp"
#include "sio/symbol_calculus.hpp"
#include "sio/toeplitz.hpp"
#include "sio/types.hpp"
#include "sio/weight.hpp"
