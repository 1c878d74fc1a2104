#pragma once

#include "permubench/benchmark.hpp"
#include "permubench/engine.hpp"
#include "permubench/mutation.hpp"
#include "permubench/oracles.hpp"
#include "permubench/permutation.hpp"
#include "permubench/random.hpp"
#include "permubench/rational.hpp"
#include "permubench/stats.hpp"
#include "permubench/sweep.hpp"
#include "permubench/verify.hpp"
