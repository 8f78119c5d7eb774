#pragma once

#include "attrisk/binomial.hpp"
#include "attrisk/dataset.hpp"
#include "attrisk/errors.hpp"
#include "attrisk/exact_moments.hpp"
#include "attrisk/measures.hpp"
#include "attrisk/report.hpp"
#include "attrisk/simulation.hpp"
#include "attrisk/types.hpp"
