#pragma once

#include "mixedab/classify.hpp"
#include "mixedab/descriptor.hpp"
#include "mixedab/integer.hpp"
#include "mixedab/matrix.hpp"
#include "mixedab/pgroup.hpp"
#include "mixedab/presented.hpp"
#include "mixedab/products_psp.hpp"
#include "mixedab/snf.hpp"
#include "mixedab/valuated.hpp"
