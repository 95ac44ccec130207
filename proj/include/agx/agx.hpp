// agx - finite magma identity checking and enumeration

#pragma once

#include "agx/enumerate.hpp"
#include "agx/identities.hpp"
#include "agx/ideals.hpp"
#include "agx/magma.hpp"
#include "agx/report.hpp"
#include "agx/subset.hpp"
#include "agx/theorems.hpp"
