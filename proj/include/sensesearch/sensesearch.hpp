#pragma once

#include "algorithms.hpp"
#include "core.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "levy.hpp"
#include "params.hpp"
#include "rng.hpp"
#include "run.hpp"
#include "scorer.hpp"
#include "stats.hpp"
#include "tuning.hpp"
