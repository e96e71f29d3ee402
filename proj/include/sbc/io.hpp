#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "sbc/homology.hpp"
#include "sbc/lattice.hpp"
#include "sbc/strata.hpp"
#include "sbc/subdivide.hpp"
#include "sbc/volume.hpp"

namespace sbc {

using Json = nlohmann::json;

struct ComplexDocument {
  ComplexPtr complex;
  std::optional<LatticeConeComplex> lattice;
};

/// Reads a whole file; InputError when unreadable.
std::string read_text_file(const std::string& path);

/// Parse errors carry "line:column", semantic errors a JSON pointer.
Json parse_json(const std::string& text, const std::string& source);

ComplexData complex_data_from_json(const Json& j, const std::string& source);
ComplexDocument complex_document_from_json(const Json& j, const std::string& source);
ComplexDocument load_complex(const std::string& path);

/// Canonical form: object keys sorted, strata and vertices in id order.
Json complex_to_json(const StratifiedComplex& c, const LatticeConeComplex* lattice = nullptr);
std::string serialize_complex(const StratifiedComplex& c, const LatticeConeComplex* lattice = nullptr);

AbelianRealization realization_from_json(const Json& j, const std::string& source);
IntersectionProfile profile_from_json(const Json& j, const std::string& source);
LabelQuotient quotient_from_json(const Json& j, const std::string& source);

Json report_to_json(const ValidationReport& r);
Json k0_to_json(const K0Class& k);
Json homology_to_json(const std::vector<HomologyGroup>& h);

}  // namespace sbc
