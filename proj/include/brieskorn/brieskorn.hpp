#pragma once

#include "brieskorn/arith.hpp"
#include "brieskorn/cache.hpp"
#include "brieskorn/errors.hpp"
#include "brieskorn/families.hpp"
#include "brieskorn/serialize.hpp"
#include "brieskorn/lattice.hpp"
#include "brieskorn/moduli.hpp"
#include "brieskorn/quasipoly.hpp"
#include "brieskorn/report.hpp"
#include "brieskorn/scan.hpp"
#include "brieskorn/stability.hpp"
#include "brieskorn/topology.hpp"
