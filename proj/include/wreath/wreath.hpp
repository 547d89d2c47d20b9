#pragma once

#include "errors.hpp"
#include "numeric.hpp"
#include "partition.hpp"
#include "family.hpp"
#include "blockperm.hpp"
#include "kpartial.hpp"
#include "center.hpp"
#include "characters.hpp"
#include "cache.hpp"
