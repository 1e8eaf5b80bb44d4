#pragma once

#include "kme/errors.hpp"
#include "kme/rootsys.hpp"
#include "kme/weyl.hpp"
#include "kme/specfun.hpp"
#include "kme/series.hpp"
