#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"
#include "prorand/element.hpp"
#include "prorand/expander.hpp"
#include "prorand/expr.hpp"
#include "prorand/gf.hpp"
#include "prorand/harness.hpp"
#include "prorand/hash.hpp"
#include "prorand/pro.hpp"
#include "prorand/spectral.hpp"
#include "prorand/stream.hpp"
