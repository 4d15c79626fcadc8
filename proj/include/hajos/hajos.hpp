#ifndef HAJOS_HAJOS_HPP
#define HAJOS_HAJOS_HPP

#include "hajos/analysis.hpp"
#include "hajos/builder.hpp"
#include "hajos/digraph.hpp"
#include "hajos/digraph_io.hpp"
#include "hajos/errors.hpp"
#include "hajos/hajos_ops.hpp"
#include "hajos/relabel.hpp"
#include "hajos/replay.hpp"
#include "hajos/trace.hpp"

#endif  // HAJOS_HAJOS_HPP
