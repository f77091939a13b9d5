#include "ptshock/io.hpp"

#include <cstdio>
#include <fstream>

namespace ptshock {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const std::vector<double>& x,
                     const std::vector<Complex>& u,
                     const std::vector<Complex>& u_x) {
  auto out = open_out(path);
  out << "x,re_u,im_u,re_ux,im_ux\n";
  for (std::size_t j = 0; j < x.size(); ++j) {
    out << format_double(x[j]) << ',' << format_double(u[j].real()) << ','
        << format_double(u[j].imag()) << ',';
    if (j < u_x.size())
      out << format_double(u_x[j].real()) << ',' << format_double(u_x[j].imag());
    else
      out << "0,0";
    out << '\n';
  }
}

void write_branchset_csv(const std::string& path, const BranchSet& bs) {
  auto out = open_out(path);
  out << "x,branch_id,re_w,im_w\n";
  for (int j = 0; j < bs.grid.points; ++j)
    for (const auto& s : bs.samples[j])
      out << format_double(bs.grid.node(j)) << ',' << s.branch_id << ','
          << format_double(s.w.real()) << ',' << format_double(s.w.imag()) << '\n';
}

void write_folded_csv(const std::string& path, const FoldedProfile& fp) {
  auto out = open_out(path);
  out << "s,x,re_w,im_w,re_u,im_u\n";
  for (std::size_t j = 0; j < fp.s.size(); ++j)
    out << format_double(fp.s[j]) << ',' << format_double(fp.x[j]) << ','
        << format_double(fp.w[j].real()) << ',' << format_double(fp.w[j].imag())
        << ',' << format_double(fp.u[j].real()) << ','
        << format_double(fp.u[j].imag()) << '\n';
}

void write_charges_csv(const std::string& path, const ChargeReport& report) {
  auto out = open_out(path);
  out << "t,kappa,re_I,im_I,post_shock\n";
  for (const auto& s : report.samples)
    out << format_double(s.t) << ',' << format_double(s.kappa) << ','
        << format_double(s.value.real()) << ',' << format_double(s.value.imag())
        << ',' << (s.post_shock ? 1 : 0) << '\n';
}

}  // namespace ptshock
