#pragma once

#include "srq/bnb.hpp"
#include "srq/bounds.hpp"
#include "srq/core.hpp"
#include "srq/dual.hpp"
#include "srq/examples.hpp"
#include "srq/heuristic.hpp"
#include "srq/instance.hpp"
#include "srq/io.hpp"
#include "srq/recovery.hpp"
#include "srq/report.hpp"
#include "srq/spectral.hpp"
