#pragma once

#include "lowdisc/errors.hpp"
#include "lowdisc/normal.hpp"
#include "lowdisc/summation.hpp"
#include "lowdisc/design.hpp"
#include "lowdisc/targets.hpp"
#include "lowdisc/kernels.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/sobol.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/quadrature.hpp"
#include "lowdisc/experiments.hpp"
#include "lowdisc/io.hpp"
