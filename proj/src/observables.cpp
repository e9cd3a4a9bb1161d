#include "ratchet/observables.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "ratchet/errors.hpp"

namespace ratchet {

double negative_volume(const GridField& f, const PhaseGrid& g) {
  double total = 0.0;
  for (int ip = 0; ip < g.np; ++ip) {
    const double* r = f.row(ip);
    double rowsum = 0.0;
    for (int j = 0; j < g.nq; ++j) rowsum += r[j] < 0.0 ? -r[j] : 0.0;
    const double trap = (ip == 0 || ip == g.np - 1) ? 0.5 : 1.0;
    total += trap * rowsum;
  }
  return total * g.dq * g.dp;
}

Diagnostics diagnostics(const HierarchyState& state, const PhaseGrid& g) {
  const GridField& w0 = state.elements[0];
  Diagnostics d;
  d.norm = integrate(w0, g, Weight::none);
  d.mean_p = integrate(w0, g, Weight::p);
  d.mean_p2 = integrate(w0, g, Weight::p2);
  d.negativity = negative_volume(w0, g);
  d.t = state.time;
  return d;
}

void export_snapshot(const HierarchyState& state, const PhaseGrid& g,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");

  char header[128];
  const int len = std::snprintf(header, sizeof(header),
                                "%d %d %.17g %.17g %.17g\n", g.nq, g.np, g.dq,
                                g.dp, state.time);
  out.write(header, len);

  const GridField& w0 = state.elements[0];
  out.write(reinterpret_cast<const char*>(w0.values.data()),
            static_cast<std::streamsize>(w0.values.size() * sizeof(double)));
  if (!out) throw IoError("write failed for " + path);
}

Snapshot import_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  std::string header;
  if (!std::getline(in, header))
    throw FormatError(0, "missing header line");

  Snapshot s;
  if (std::sscanf(header.c_str(), "%d %d %lf %lf %lf", &s.nq, &s.np, &s.dq,
                  &s.dp, &s.t) != 5 ||
      s.nq < 1 || s.np < 1)
    throw FormatError(0, "malformed header");

  const std::size_t header_len = header.size() + 1;
  s.field = GridField(s.nq, s.np);
  const std::size_t payload = s.field.values.size() * sizeof(double);
  in.read(reinterpret_cast<char*>(s.field.values.data()),
          static_cast<std::streamsize>(payload));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got < payload)
    throw FormatError(header_len + got, "truncated payload");

  char extra;
  if (in.read(&extra, 1))
    throw FormatError(header_len + payload, "trailing bytes after payload");
  return s;
}

}  // namespace ratchet
