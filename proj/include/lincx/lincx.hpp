#pragma once

#include "lincx/complexes.hpp"
#include "lincx/errors.hpp"
#include "lincx/exterior.hpp"
#include "lincx/gf.hpp"
#include "lincx/linalg.hpp"
#include "lincx/partitions.hpp"
#include "lincx/projspace.hpp"
#include "lincx/search.hpp"
#include "lincx/spreads.hpp"
#include "lincx/tables.hpp"
#include "lincx/version.hpp"
