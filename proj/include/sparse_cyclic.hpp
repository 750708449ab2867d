#pragma once

#include "sparse_cyclic/core.hpp"
#include "sparse_cyclic/dynamics/initial.hpp"
#include "sparse_cyclic/dynamics/integrate.hpp"
#include "sparse_cyclic/dynamics/noise.hpp"
#include "sparse_cyclic/dynamics/states.hpp"
#include "sparse_cyclic/dynamics/systems.hpp"
#include "sparse_cyclic/dynamics/velocity.hpp"
#include "sparse_cyclic/dictionary/cyclic_data.hpp"
#include "sparse_cyclic/dictionary/dictionary.hpp"
#include "sparse_cyclic/dictionary/legendre.hpp"
#include "sparse_cyclic/dictionary/multi_index.hpp"
#include "sparse_cyclic/dictionary/scaling.hpp"
#include "sparse_cyclic/solver/douglas_rachford.hpp"
#include "sparse_cyclic/solver/least_squares.hpp"
#include "sparse_cyclic/solver/prox.hpp"
#include "sparse_cyclic/solver/support.hpp"
#include "sparse_cyclic/analysis/coherence.hpp"
#include "sparse_cyclic/analysis/metrics.hpp"
#include "sparse_cyclic/experiment/config.hpp"
#include "sparse_cyclic/experiment/fields.hpp"
#include "sparse_cyclic/experiment/io.hpp"
#include "sparse_cyclic/experiment/models.hpp"
#include "sparse_cyclic/experiment/pipeline.hpp"
#include "sparse_cyclic/experiment/table.hpp"
