// "k,probability" tables: the data behind the event plots.
#pragma once

#include "lqfa/semantics.hpp"

#include <string>

namespace lqfa {

// Rows sorted by k, contiguous from 0; probabilities clamped to [0,1]
// and printed with 12 significant digits.
std::string format_event_csv(const EventTable &t);

// Inverse of format_event_csv; throws std::invalid_argument on malformed
// input or non-contiguous lengths.
EventTable parse_event_csv(const std::string &csv);

} // namespace lqfa
