// Umbrella header: the whole library.
#pragma once

#include <hilfer/artifacts.hpp>
#include <hilfer/certifier.hpp>
#include <hilfer/errors.hpp>
#include <hilfer/fracops.hpp>
#include <hilfer/gamma.hpp>
#include <hilfer/grid.hpp>
#include <hilfer/gronwall.hpp>
#include <hilfer/mlf.hpp>
#include <hilfer/operator_families.hpp>
#include <hilfer/picard.hpp>
#include <hilfer/problem.hpp>
#include <hilfer/problem_io.hpp>
#include <hilfer/psi_map.hpp>
#include <hilfer/sampled_fn.hpp>
#include <hilfer/trajectory.hpp>
