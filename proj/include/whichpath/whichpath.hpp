#pragma once

#include "whichpath/constants.hpp"
#include "whichpath/dephasing.hpp"
#include "whichpath/dielectric.hpp"
#include "whichpath/errors.hpp"
#include "whichpath/interference.hpp"
#include "whichpath/materials.hpp"
#include "whichpath/quadrature.hpp"
#include "whichpath/spectral.hpp"
#include "whichpath/sweep.hpp"
