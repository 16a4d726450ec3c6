#pragma once

#include "polyagamma/alternate.hpp"
#include "polyagamma/base_samplers.hpp"
#include "polyagamma/devroye.hpp"
#include "polyagamma/error.hpp"
#include "polyagamma/jstar_density.hpp"
#include "polyagamma/polya_gamma.hpp"
#include "polyagamma/rng.hpp"
#include "polyagamma/saddlepoint.hpp"
#include "polyagamma/special_functions.hpp"
#include "polyagamma/truncation_table.hpp"
#include "polyagamma/validation.hpp"
