#pragma once

#include "diskpath/critical_scan.hpp"
#include "diskpath/deciders.hpp"
#include "diskpath/geometry.hpp"
#include "diskpath/grid_index.hpp"
#include "diskpath/io.hpp"
#include "diskpath/optimizer.hpp"
#include "diskpath/reference.hpp"
#include "diskpath/threshold_oracle.hpp"
