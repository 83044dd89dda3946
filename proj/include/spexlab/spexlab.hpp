#ifndef SPEXLAB_SPEXLAB_HPP
#define SPEXLAB_SPEXLAB_HPP

#include "spexlab/battery.hpp"
#include "spexlab/errors.hpp"
#include "spexlab/evolving_sets.hpp"
#include "spexlab/gap_measures.hpp"
#include "spexlab/generators.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/graph_io.hpp"
#include "spexlab/graph_ops.hpp"
#include "spexlab/hypercube.hpp"
#include "spexlab/hypercube_model.hpp"
#include "spexlab/incoming_profile.hpp"
#include "spexlab/ls_curve.hpp"
#include "spexlab/rng.hpp"
#include "spexlab/stats.hpp"
#include "spexlab/subsets.hpp"
#include "spexlab/verify.hpp"
#include "spexlab/walks.hpp"

#endif  // SPEXLAB_SPEXLAB_HPP
