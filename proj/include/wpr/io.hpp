#ifndef WPR_IO_HPP
#define WPR_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "wpr/adic.hpp"
#include "wpr/wpr.hpp"

namespace wpr::io {

using json = nlohmann::json;

/// Integers travel as decimal strings; parsing rejects anything non-canonical.
json num(long v);
json num(const mpz_class& v);
long to_long(const json& j, const std::string& what);

json ring_to_json(const RingPresentation& r);
RingPresentation ring_from_json(const json& j);

/// Polynomials are canonical formatted normal forms.
json poly_to_json(const RingPresentation& r, const Poly& p);
Poly poly_from_json(const RingPresentation& r, const json& j);
json polys_to_json(const RingPresentation& r, const std::vector<Poly>& ps);
std::vector<Poly> polys_from_json(const RingPresentation& r, const json& j);

json module_to_json(const ModulePresentation& m);
ModulePresentation module_from_json(const json& j);
json size_to_json(const ModuleSize& s);

json certificate_to_json(const WprCertificate& c);
WprCertificate certificate_from_json(const json& j);

}  // namespace wpr::io

#endif
