#pragma once

#include "kcomm/error.hpp"
#include "kcomm/scalar.hpp"
#include "kcomm/mat2.hpp"
#include "kcomm/kcommutator.hpp"
#include "kcomm/linalg.hpp"
#include "kcomm/random.hpp"
#include "kcomm/classify.hpp"
#include "kcomm/preserver.hpp"
