#pragma once

// Umbrella header.

#include "cluster.hpp"
#include "dbscan.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "kmeans.hpp"
#include "linkage.hpp"
#include "mapper.hpp"
#include "pca.hpp"
#include "persistence.hpp"
#include "point_cloud.hpp"
#include "rips.hpp"
#include "rng.hpp"
#include "table.hpp"
#include "version.hpp"
