#pragma once

#include <string>

#include "sched/model.hpp"

namespace sched {

// Parse the canonical instance document:
//   {"m": <int>=1, optional>, "jobs": [{"id":..,"t":..,"u":..,"p":..}, ...]}
// The result is validated. Throws Error with syntax_error / schema_error /
// the first validation error.
Instance parse_instance(const std::string& text);

// Canonical serialization: keys in the order (m, jobs) and (id, t, u, p),
// numbers as shortest round-trip decimals, no whitespace.
// parse_instance(serialize_instance(x)) == x field-for-field.
std::string serialize_instance(const Instance& inst);

// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string instance_fingerprint(const Instance& inst);

Instance load_instance_file(const std::string& path);

// Shortest round-trip decimal form of a double (used for CSV cells).
std::string format_double(double v);

}  // namespace sched
