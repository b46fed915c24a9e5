#pragma once

#include "simplexlab/errors.hpp"
#include "simplexlab/rational.hpp"
#include "simplexlab/field.hpp"
#include "simplexlab/ortho.hpp"
#include "simplexlab/fourier.hpp"
#include "simplexlab/structure.hpp"
#include "simplexlab/io.hpp"
#include "simplexlab/rewrite.hpp"
#include "simplexlab/threshold.hpp"
#include "simplexlab/parallel.hpp"
#include "simplexlab/grid.hpp"
#include "simplexlab/counting.hpp"
#include "simplexlab/oracle.hpp"
#include "simplexlab/paths.hpp"
#include "simplexlab/cycles.hpp"
#include "simplexlab/experiments.hpp"
#include "simplexlab/verify.hpp"
