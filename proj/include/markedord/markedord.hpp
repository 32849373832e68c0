#pragma once

#include "markedord/error.hpp"
#include "markedord/poset.hpp"
#include "markedord/polynomial.hpp"
#include "markedord/parallel.hpp"
#include "markedord/marked_order.hpp"
#include "markedord/monotone_triangles.hpp"
#include "markedord/coloring.hpp"
#include "markedord/corpus.hpp"
#include "markedord/io.hpp"
