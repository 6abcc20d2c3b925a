#pragma once

#include "poloc/specfun.hpp"
#include "poloc/kinematics.hpp"
#include "poloc/kernels.hpp"
#include "poloc/kernel_json.hpp"
#include "poloc/expansion.hpp"
#include "poloc/pd.hpp"
#include "poloc/causality.hpp"
#include "poloc/inversion.hpp"
#include "poloc/localization.hpp"
#include "poloc/onedim.hpp"
