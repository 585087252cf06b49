#pragma once

#include "czmix/error.hpp"
#include "czmix/grid.hpp"
#include "czmix/field_io.hpp"
#include "czmix/fourier.hpp"
#include "czmix/bump.hpp"
#include "czmix/multiplier.hpp"
#include "czmix/kernel.hpp"
#include "czmix/slice.hpp"
#include "czmix/norms.hpp"
#include "czmix/cz_decomp.hpp"
#include "czmix/corpus.hpp"
#include "czmix/harness.hpp"
#include "czmix/acceptance.hpp"
