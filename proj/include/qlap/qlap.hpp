#ifndef QLAP_QLAP_HPP
#define QLAP_QLAP_HPP

#include "qlap/exact.hpp"
#include "qlap/graph.hpp"
#include "qlap/graph_analysis.hpp"
#include "qlap/search.hpp"
#include "qlap/spectra.hpp"
#include "qlap/theorems.hpp"

#endif // QLAP_QLAP_HPP
