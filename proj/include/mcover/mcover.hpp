#pragma once

#include "mcover/census.hpp"
#include "mcover/core.hpp"
#include "mcover/family.hpp"
#include "mcover/generators.hpp"
#include "mcover/io.hpp"
#include "mcover/jump.hpp"
#include "mcover/load_profile.hpp"
#include "mcover/lpt.hpp"
#include "mcover/migration.hpp"
#include "mcover/online_lpt.hpp"
#include "mcover/oracle.hpp"
#include "mcover/rational.hpp"
#include "mcover/rounding.hpp"
#include "mcover/stream.hpp"
