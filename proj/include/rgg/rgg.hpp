#pragma once

// Umbrella header: the whole library.

#include "rgg/concentration.hpp"
#include "rgg/eigen.hpp"
#include "rgg/experiments.hpp"
#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/io.hpp"
#include "rgg/kernel.hpp"
#include "rgg/matrix.hpp"
#include "rgg/ordering.hpp"
#include "rgg/parallel.hpp"
