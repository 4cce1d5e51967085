#pragma once

#include "wshed/boundary.hpp"
#include "wshed/catchment.hpp"
#include "wshed/error.hpp"
#include "wshed/io.hpp"
#include "wshed/levels.hpp"
#include "wshed/lrg.hpp"
#include "wshed/metrics.hpp"
#include "wshed/mns.hpp"
#include "wshed/network.hpp"
#include "wshed/reference.hpp"
#include "wshed/stitch.hpp"
#include "wshed/synthetic.hpp"
