#pragma once

// Umbrella header for the library.

#include "chowla/config.hpp"
#include "chowla/generators.hpp"
#include "chowla/gridfn.hpp"
#include "chowla/oracle.hpp"
#include "chowla/setcore.hpp"
#include "chowla/trigpoly.hpp"
#include "chowla/verify.hpp"
