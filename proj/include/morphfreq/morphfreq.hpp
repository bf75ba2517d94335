#pragma once

#include "morphfreq/errors.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/word.hpp"
#include "morphfreq/morphism.hpp"
#include "morphfreq/fixed_point.hpp"
#include "morphfreq/letter_spectrum.hpp"
#include "morphfreq/factor_frequency.hpp"
#include "morphfreq/verify.hpp"
#include "morphfreq/random.hpp"
#include "morphfreq/report.hpp"
