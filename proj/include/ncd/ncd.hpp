#pragma once

#include "ncd/circle.hpp"
#include "ncd/cohomology.hpp"
#include "ncd/cyclotomic.hpp"
#include "ncd/group.hpp"
#include "ncd/int_matrix.hpp"
#include "ncd/json_io.hpp"
#include "ncd/module_deform.hpp"
#include "ncd/rational_split.hpp"
#include "ncd/series.hpp"
#include "ncd/spectral.hpp"
#include "ncd/twisted_algebra.hpp"
