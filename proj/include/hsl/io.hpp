#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hsl/cesaro.hpp"
#include "hsl/kernel.hpp"
#include "hsl/spectra.hpp"

namespace hsl {

using json = nlohmann::json;

/// Schema:
///   {"variant":"cesaro","nu":[re,im]}
///   {"variant":"powercut","exponent":[re,im],"lo":x,"hi":x|"inf"}
///   {"variant":"sampled","t":[...],"values":[[re,im],...]}
///   {"variant":"atomic","atoms":[[cre,cim,t],...]}
///   {"variant":"truncated","inner":{...},"delta":d}
/// Complex numbers may also be given as a bare real. Throws ConfigError.
KernelSpec kernel_from_json(const json& j);
json kernel_to_json(const KernelSpec& k);

/// "2", "-1.5", "3i", "2+1i", "2-0.5i", "1e-3+2e1i".
cplx parse_complex(const std::string& s);

/// Serializes with every floating-point number printed to 17 significant
/// digits (non-finite numbers become null), so artifacts are byte-stable.
std::string dump_json(const json& j, int indent = 2);

/// Eigenvalue lists longer than max_eigenvalues are thinned with a fixed
/// stride; the stride is recorded in the output.
json report_to_json(const SpectralReport& r, std::size_t max_eigenvalues = std::size_t(1) << 14);
json cesaro_report_to_json(const CesaroReport& r);

/// 800x800 portrait: symbol curve polyline, eigenvalue dots, labelled axes.
void write_svg(std::ostream& os, const SpectralReport& r);

}  // namespace hsl
