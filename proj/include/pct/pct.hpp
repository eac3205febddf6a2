#ifndef PCT_PCT_HPP
#define PCT_PCT_HPP

#include "error.hpp"
#include "rational.hpp"
#include "model.hpp"
#include "ranking.hpp"
#include "scoring.hpp"
#include "indicators.hpp"
#include "io.hpp"
#include "commands.hpp"

#endif
