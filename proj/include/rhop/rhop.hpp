#pragma once

#include "rhop/errors.hpp"
#include "rhop/cheb.hpp"
#include "rhop/cauchy.hpp"
#include "rhop/weight.hpp"
#include "rhop/green.hpp"
#include "rhop/aux_fun.hpp"
#include "rhop/rh_solver.hpp"
#include "rhop/jacobi.hpp"
#include "rhop/pipeline.hpp"
#include "rhop/oracle.hpp"
#include "rhop/config.hpp"
