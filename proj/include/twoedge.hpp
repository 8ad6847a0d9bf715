#ifndef TWOEDGE_HPP
#define TWOEDGE_HPP

#include "twoedge/catalog.hpp"
#include "twoedge/config.hpp"
#include "twoedge/errors.hpp"
#include "twoedge/graph.hpp"
#include "twoedge/numerics.hpp"
#include "twoedge/observables.hpp"
#include "twoedge/parallel.hpp"
#include "twoedge/run.hpp"
#include "twoedge/spectral.hpp"
#include "twoedge/wigner.hpp"

#endif // TWOEDGE_HPP
