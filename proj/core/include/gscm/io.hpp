#pragma once

#include <string>
#include <vector>

#include "gscm/apps.hpp"
#include "gscm/gentry_szydlo.hpp"

namespace gscm {

/* Canonical JSON: object keys sorted, arbitrary-precision integers as strings
 * (53-bit JSON consumers must not corrupt values), elements as "p/q" strings.
 * Serialization preserves the construction form ({"cyclotomic": m},
 * {"polynomial": ...}, or the raw table) so load/store round-trips are
 * byte-identical. */

std::string order_to_json(const OrderPtr& o);
OrderPtr order_from_json(const std::string& text);

std::string element_to_json(const OrderElement& x);
OrderElement element_from_json(const OrderPtr& o, const std::string& text);

std::string ideal_to_json(const FractionalIdeal& i);
FractionalIdeal ideal_from_json(const OrderPtr& o, const std::string& text);

std::string witness_to_json(const PowerWitness& w);

std::string transcript_to_json(const std::vector<TranscriptSample>& samples);
std::vector<TranscriptSample> transcript_from_json(const OrderPtr& o, const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gscm
