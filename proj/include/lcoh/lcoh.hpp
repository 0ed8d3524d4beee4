#pragma once

#include "fplin.hpp"
#include "graded.hpp"
#include "idealsets.hpp"
#include "steenrod.hpp"
#include "homalg.hpp"
#include "towers.hpp"
#include "builtins.hpp"
