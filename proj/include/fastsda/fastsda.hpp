#pragma once

#include "fastsda/clustering.hpp"
#include "fastsda/dataset.hpp"
#include "fastsda/error.hpp"
#include "fastsda/eval.hpp"
#include "fastsda/kernel.hpp"
#include "fastsda/laplacian.hpp"
#include "fastsda/layout.hpp"
#include "fastsda/linalg.hpp"
#include "fastsda/model_io.hpp"
#include "fastsda/oracle.hpp"
#include "fastsda/preprocess.hpp"
#include "fastsda/regression.hpp"
#include "fastsda/rng.hpp"
#include "fastsda/targets.hpp"
