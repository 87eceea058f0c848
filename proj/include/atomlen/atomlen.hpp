#pragma once

#include "affine_classical.hpp"
#include "affine_permutation.hpp"
#include "common.hpp"
#include "cores_abaci.hpp"
#include "finite_weyl.hpp"
#include "quadratic_forms.hpp"
#include "sumsets.hpp"
