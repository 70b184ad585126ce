#pragma once

#include "chowla/verify_additive.hpp"
#include "chowla/verify_calculus.hpp"
#include "chowla/verify_common.hpp"
#include "chowla/verify_cube.hpp"
#include "chowla/verify_general.hpp"
