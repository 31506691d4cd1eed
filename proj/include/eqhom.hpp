#pragma once

#include "eqhom/builtins.hpp"
#include "eqhom/duality.hpp"
#include "eqhom/enriques.hpp"
#include "eqhom/equivariant.hpp"
#include "eqhom/galois_maximality.hpp"
#include "eqhom/io.hpp"
#include "eqhom/spectral.hpp"
#include "eqhom/verify.hpp"
