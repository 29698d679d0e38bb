#pragma once

#include "clustering.hpp"
#include "contamination.hpp"
#include "density_filter.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "kdtree.hpp"
#include "mesh.hpp"
#include "octree.hpp"
#include "pipeline.hpp"
#include "smoothing.hpp"
