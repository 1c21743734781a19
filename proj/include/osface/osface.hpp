#ifndef OSFACE_OSFACE_HPP
#define OSFACE_OSFACE_HPP

#include "errors.hpp"
#include "face_model.hpp"
#include "formulas.hpp"
#include "pfaffian.hpp"
#include "report.hpp"
#include "sampler.hpp"
#include "state_sum.hpp"
#include "suite.hpp"
#include "theta.hpp"

#endif // OSFACE_OSFACE_HPP
