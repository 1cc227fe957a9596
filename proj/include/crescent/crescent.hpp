// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "crescent/compact_candidate.hpp"
#include "crescent/countable_open.hpp"
#include "crescent/error.hpp"
#include "crescent/integrate.hpp"
#include "crescent/johnstone.hpp"
#include "crescent/johnstone_space.hpp"
#include "crescent/ncof.hpp"
#include "crescent/open_set.hpp"
#include "crescent/poset.hpp"
#include "crescent/scalar.hpp"
#include "crescent/serialize.hpp"
#include "crescent/smyth.hpp"
#include "crescent/sorgenfrey.hpp"
#include "crescent/tix.hpp"
#include "crescent/valuation.hpp"
