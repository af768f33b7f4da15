#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcech/cech.hpp"
#include "qcech/textdoc.hpp"
#include "qcech/theorems.hpp"

namespace {

using namespace qcech;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitConclusion = 3;
constexpr int kExitCap = 4;

int env_cap(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  try {
    return std::stoi(v);
  } catch (const std::logic_error&) {
    return fallback;
  }
}

int exit_for(const error& e) {
  std::cout << "error: " << e.what() << "\n";
  return e.kind() == errc::size_cap_exceeded ? kExitCap : kExitValidation;
}

const AbPresheaf& find_presheaf(const Workspace& ws, const std::string& name) {
  auto it = ws.presheaves.find(name);
  if (it == ws.presheaves.end())
    fail(errc::validation_error, "no presheaf named '" + name + "'");
  return it->second;
}

const MonotoneMap& find_morphism(const Workspace& ws, const std::string& name) {
  auto it = ws.morphisms.find(name);
  if (it == ws.morphisms.end())
    fail(errc::validation_error, "no morphism named '" + name + "'");
  return it->second;
}

int element_by_label(const Quantale& q, const std::string& label) {
  for (int i = 0; i < q.n; ++i)
    if (q.labels[i] == label) return i;
  fail(errc::validation_error, "no element labelled '" + label + "'");
}

int cmd_validate(const std::string& file) {
  ParseOutcome out = parse_document(read_file(file));
  for (const auto& b : out.blocks)
    std::cout << b.kind << " " << b.name << ": " << (b.ok ? "ok" : "INVALID") << " ("
              << b.message << ")\n";
  if (out.blocks.empty()) std::cout << "empty document\n";
  return out.all_ok() ? kExitOk : kExitValidation;
}

int cmd_cohomology(const std::string& file, const std::string& presheaf,
                   const std::string& element, const std::vector<std::string>& cover,
                   int max_q, int downset_cap, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  Workspace ws = load_document(read_file(file));
  const AbPresheaf& f = find_presheaf(ws, presheaf);
  const Quantale& q = *f.base;
  int u = element.empty() ? q.top : element_by_label(q, element);
  std::cout << "presheaf " << presheaf << " at " << q.labels[u] << "\n";
  CohomologyResult res;
  if (!cover.empty()) {
    std::vector<int> members;
    for (const auto& lbl : cover) members.push_back(element_by_label(q, lbl));
    Cover c = make_cover(f.base, u, std::move(members));
    res = cover_cohomology(c, f, max_q);
    std::cout << "cover";
    for (int m : c.members) std::cout << " " << q.labels[m];
    std::cout << "\n";
  } else {
    ElementCohomology h = element_cohomology(f.base, u, f, max_q, downset_cap);
    res = h.result;
    std::cout << "covers " << h.covers_enumerated << "\nterminal";
    for (int m : res.cover.members) std::cout << " " << q.labels[m];
    std::cout << "\n";
  }
  for (size_t qd = 0; qd < res.groups.size(); ++qd)
    std::cout << "H^" << qd << " = " << res.groups[qd].to_string() << "\n";
  if (timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << "elapsed_ms " << ms << "\n";
  }
  return kExitOk;
}

int report_exit(const TheoremReport& rep) {
  std::cout << rep.to_text();
  if (rep.passed()) return kExitOk;
  return rep.hypotheses_pass() ? kExitConclusion : kExitValidation;
}

int cmd_sheafcheck(const std::string& file, const std::string& presheaf,
                   int downset_cap) {
  Workspace ws = load_document(read_file(file));
  const AbPresheaf& f = find_presheaf(ws, presheaf);
  SheafReport rep = sheaf_check(f, nullptr, downset_cap);
  std::cout << "presheaf " << presheaf << ": covers checked " << rep.covers_checked
            << "\n";
  if (rep.is_sheaf) {
    std::cout << "sheaf: yes\n";
    return kExitOk;
  }
  const CoverVerdict& v = rep.failures.front();
  std::cout << "sheaf: NO\nfails at element " << f.base->labels[v.element]
            << " with cover";
  if (v.members.empty()) std::cout << " (empty)";
  for (int m : v.members) std::cout << " " << f.base->labels[m];
  std::cout << "\nreason " << v.kind << "\n";
  return kExitConclusion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quantale Cech cohomology toolkit"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads (reserved; output order is fixed)");
  int downset_cap = env_cap("QCECH_DOWNSET_CAP", kCoverColimitCap);

  std::string file, presheaf_name, element, morphism_name;
  std::vector<std::string> cover;
  int max_q = -1;
  bool timing = false;

  auto* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("file", file)->required();

  auto* coh = app.add_subcommand("cohomology", "Cech cohomology of an element");
  coh->add_option("file", file)->required();
  coh->add_option("--presheaf", presheaf_name)->required();
  coh->add_option("--element", element, "element label (default: top)");
  coh->add_option("--cover", cover, "cover member labels (cover cohomology only)");
  coh->add_option("--max-q", max_q, "highest degree to report");
  coh->add_option("--downset-cap", downset_cap, "cover enumeration cap");
  coh->add_flag("--timing", timing, "append elapsed time");

  auto* sheaf = app.add_subcommand("sheafcheck", "check the equalizer condition");
  sheaf->add_option("file", file)->required();
  sheaf->add_option("--presheaf", presheaf_name)->required();
  sheaf->add_option("--downset-cap", downset_cap, "cover enumeration cap");

  auto* verify = app.add_subcommand("verify", "verify a theorem instance");
  verify->require_subcommand(1);
  int tq = 2, tk = 2, zmod_n = 4;
  std::string ideal_gen = "2";
  std::vector<std::string> open_covers;
  auto* vtt = verify->add_subcommand("tau-theta", "ideal/open adjunction for F_q^k");
  vtt->add_option("q", tq, "field size")->required();
  vtt->add_option("k", tk, "coordinates")->required();
  auto* vci = verify->add_subcommand("cover-iso", "cochain identity along tau");
  vci->add_option("q", tq, "field size")->required();
  vci->add_option("k", tk, "coordinates")->required();
  vci->add_option("--opens", open_covers,
                  "open sets {x1,..} whose theta images form the cover");
  auto* vmi = verify->add_subcommand("main-iso", "cohomology invariance at the units");
  vmi->add_option("file", file)->required();
  vmi->add_option("--morphism", morphism_name)->required();
  vmi->add_option("--presheaf", presheaf_name)->required();
  vmi->add_option("--max-q", max_q);
  vmi->add_option("--downset-cap", downset_cap);
  auto* vcb = verify->add_subcommand("change-of-base", "sheaves pull back to sheaves");
  vcb->add_option("file", file)->required();
  vcb->add_option("--morphism", morphism_name)->required();
  vcb->add_option("--presheaf", presheaf_name)->required();
  vcb->add_option("--downset-cap", downset_cap);
  auto* vq = verify->add_subcommand("quotient", "direct image of a quotient map");
  vq->add_option("--zmod", zmod_n, "modulus of Z/n")->required();
  vq->add_option("--ideal", ideal_gen, "generator of I")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(file);
    if (*coh)
      return cmd_cohomology(file, presheaf_name, element, cover, max_q, downset_cap,
                            timing);
    if (*sheaf) return cmd_sheafcheck(file, presheaf_name, downset_cap);
    if (*vtt) return report_exit(verify_tau_theta(tq, tk));
    if (*vq) {
      RingPtr r = zmod_ring(zmod_n);
      int g = std::stoi(ideal_gen);
      uint64_t mask = ideal_generated_by(*r, uint64_t(1) << (((g % zmod_n) + zmod_n) % zmod_n));
      return report_exit(verify_quotient_direct_image(r, mask));
    }
    if (*vci) {
      RingPtr r = function_ring(tq, tk);
      IdealQuantale iq = ideal_quantale(r);
      SpaceLocale loc = locale_of_space(discrete_space(tk));
      std::vector<int> members;
      auto theta_member = [&](uint64_t open_mask) {
        members.push_back(iq.index_of(theta_ideal(*r, open_mask)));
      };
      if (open_covers.empty()) {
        // default: theta of the singleton opens
        for (int p = 0; p < tk; ++p) theta_member(uint64_t(1) << p);
      } else {
        for (const auto& s : open_covers) {
          uint64_t mask = 0;
          std::string inner =
              s.size() >= 2 && s.front() == '{' ? s.substr(1, s.size() - 2) : s;
          size_t pos = 0;
          while (pos < inner.size()) {
            size_t next = inner.find(',', pos);
            std::string p =
                inner.substr(pos, next == std::string::npos ? next : next - pos);
            int pi = -1;
            for (int j = 0; j < loc.space.points(); ++j)
              if (loc.space.point_names[j] == p) pi = j;
            if (pi < 0)
              fail(errc::validation_error, "no point named '" + p + "'");
            mask |= uint64_t(1) << pi;
            if (next == std::string::npos) break;
            pos = next + 1;
          }
          theta_member(mask);
        }
      }
      Cover c = make_cover(iq.quantale, iq.quantale->top, std::move(members));
      AbPresheaf f = locally_constant_sheaf(loc, FgAbGroup({Int(0)}));
      return report_exit(verify_cover_iso(iq, loc, c, f));
    }
    Workspace ws = load_document(read_file(file));
    const AbPresheaf& f = find_presheaf(ws, presheaf_name);
    const MonotoneMap& m = find_morphism(ws, morphism_name);
    if (*vmi) return report_exit(verify_main_iso(m, f, max_q, downset_cap));
    return report_exit(verify_change_of_base(f, m, downset_cap));
  } catch (const error& e) {
    return exit_for(e);
  }
}
