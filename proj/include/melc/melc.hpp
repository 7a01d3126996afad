#ifndef MELC_MELC_HPP
#define MELC_MELC_HPP

#include "melc/datasets.hpp"
#include "melc/geometry.hpp"
#include "melc/kde.hpp"
#include "melc/objectives.hpp"
#include "melc/parallel.hpp"
#include "melc/quadrature.hpp"
#include "melc/risk.hpp"
#include "melc/sweep.hpp"

#endif
