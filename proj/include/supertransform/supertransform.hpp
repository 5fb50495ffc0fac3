#pragma once
// Umbrella header.

#include "supertransform/scalars.hpp"
#include "supertransform/superalg.hpp"
#include "supertransform/linalg.hpp"
#include "supertransform/operators.hpp"
#include "supertransform/cliffweyl.hpp"
#include "supertransform/harmonics.hpp"
#include "supertransform/hermite.hpp"
#include "supertransform/fourier.hpp"
#include "supertransform/fracfourier.hpp"
#include "supertransform/radon.hpp"
#include "supertransform/fundsol.hpp"
