#pragma once

#include "packcov/arrangement.hpp"
#include "packcov/bounds.hpp"
#include "packcov/convex_body.hpp"
#include "packcov/greedy.hpp"
#include "packcov/io.hpp"
#include "packcov/lattice.hpp"
#include "packcov/polygon.hpp"
#include "packcov/scalar.hpp"
#include "packcov/svg.hpp"
#include "packcov/torus.hpp"
#include "packcov/vec.hpp"
