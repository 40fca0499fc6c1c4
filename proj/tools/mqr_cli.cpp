// Command-line driver: validate / classify / enumerate / reduce / verify.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 resource bound exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mqr/count.hpp"
#include "mqr/dsl.hpp"
#include "mqr/errors.hpp"
#include "mqr/fixtures.hpp"
#include "mqr/reduce.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mqr::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dims_summary(const mqr::MarkedQuiver& mq, const mqr::DimVec& d) {
  std::ostringstream os;
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) {
    if (x) os << " ";
    os << mq.quiver.vertices[x] << ":";
    const mqr::Vectroid& V = mq.vectroid_at(x);
    if (V.n_objects() == 1) {
      os << d.mult[x][0];
    } else {
      os << "(";
      for (int a = 0; a < V.n_objects(); ++a) {
        if (a) os << ",";
        os << d.mult[x][a];
      }
      os << ")";
    }
  }
  return os.str();
}

std::vector<uint32_t> parse_fields(const std::string& s) {
  std::vector<uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<uint32_t>(std::stoul(item)));
  if (out.empty()) throw mqr::ParseError("empty field list");
  return out;
}

int cmd_validate(const std::string& path) {
  mqr::SpecDocument doc = mqr::parse_spec(read_file(path));  // validates everything
  std::cout << "quiver: " << doc.mq.quiver.n_vertices() << " vertices, "
            << doc.mq.quiver.n_arrows() << " arrows, connected\n";
  for (int x = 0; x < doc.mq.quiver.n_vertices(); ++x) {
    std::cout << "vertex " << doc.mq.quiver.vertices[x] << ": "
              << mqr::vectroid_to_dsl(doc.mq.vectroid_at(x)) << " -- spectroid ok\n";
  }
  std::cout << "valid\n";
  return 0;
}

int cmd_classify(const std::string& path, bool evidence, int dim_bound,
                 const std::string& fields_str) {
  mqr::SpecDocument doc = mqr::parse_spec(read_file(path));
  mqr::Verdict v = mqr::classify(doc.mq);
  std::cout << v.to_string() << "\n";
  if (evidence) {
    std::vector<uint32_t> fields = parse_fields(fields_str);
    const mqr::MarkedQuiver* target = &doc.mq;
    std::optional<mqr::MarkedQuiver> vd;
    if (v.kind == mqr::VerdictKind::ReducedToVectroid) {
      mqr::Quiver q;
      q.vertices = {"x", "y"};
      q.arrows.push_back({"a", 0, 1});
      vd.emplace(q, std::vector<mqr::Vectroid>{mqr::make_linear(1, doc.mq.field),
                                                *v.vectroid_problem},
                 doc.mq.field);
      target = &*vd;
      std::cout << "evidence for the vectroid problem:\n";
    }
    mqr::EvidenceRecord rec =
        mqr::empirical_type_report(*target, dim_bound, fields, mqr::EvidenceStop::Full);
    std::cout << "dims";
    for (uint32_t p : fields) std::cout << "\tp=" << p;
    std::cout << "\n";
    for (const auto& row : rec.rows) {
      std::cout << dims_summary(*target, row.dims);
      for (uint64_t c : row.counts) std::cout << "\t" << c;
      std::cout << "\n";
    }
    std::cout << "evidence:";
    if (rec.finite_evidence) std::cout << " finite(stabilized, field-independent)";
    if (rec.tame_evidence) std::cout << " tame(count growth)";
    if (rec.wild_evidence) std::cout << " wild(two-parameter growth)";
    if (!rec.finite_evidence && !rec.tame_evidence && !rec.wild_evidence)
      std::cout << " inconclusive";
    std::cout << "\n";
  }
  return 0;
}

int cmd_enumerate(const std::string& path, int dim_bound, uint32_t p) {
  mqr::SpecDocument doc = mqr::parse_spec(read_file(path));
  mqr::MarkedQuiver mq = p ? mqr::with_field(doc.mq, p) : doc.mq;
  auto inds = mqr::enumerate_indecomposables(mq, dim_bound);
  std::cout << inds.size() << " indecomposable classes up to level " << dim_bound << " over GF("
            << mq.field.p() << ")\n";
  for (size_t i = 0; i < inds.size(); ++i) {
    std::cout << "-- class " << (i + 1) << ": " << dims_summary(mq, inds[i].dims) << "\n"
              << mqr::serialize_rep(mq, inds[i]);
  }
  return 0;
}

int cmd_reduce(const std::string& path, const std::string& arrow, int dim_cap) {
  mqr::SpecDocument doc = mqr::parse_spec(read_file(path));
  mqr::ReductionResult r = mqr::reduce_pendant_arrow(doc.mq, arrow, dim_cap);
  std::cout << "eliminated: " << r.eliminated << "\n";
  const mqr::PartReduction& part = r.part();
  std::cout << "sub-problem indecomposables (" << part.object_table.size() << " surviving, "
            << part.kernel_objects.size() << " kernel):\n";
  for (size_t i = 0; i < part.object_table.size(); ++i) {
    std::cout << "-- object s" << (i + 1) << " <- "
              << dims_summary(part.subproblem, part.object_table[i].dims) << "\n"
              << mqr::serialize_rep(part.subproblem, part.object_table[i]);
  }
  for (const auto& k : part.kernel_objects)
    std::cout << "-- kernel " << dims_summary(part.subproblem, k.dims) << "\n";
  const mqr::Vectroid& vw = r.reduced.vectroid_at(r.fused_vertex());
  std::cout << "new marking at " << r.reduced.quiver.vertices[r.fused_vertex()] << ": "
            << mqr::vectroid_to_dsl(vw) << "\n";
  std::cout << "structure poset:\n" << mqr::structure_poset(vw).to_string();
  mqr::SpecDocument out{r.reduced, {}};
  std::cout << "reduced document:\n" << mqr::serialize_spec(out);
  return 0;
}

int cmd_verify(const std::string& name, uint32_t p) {
  mqr::FixtureResult res = mqr::run_fixture(name, p);
  std::cout << "fixture " << name << ":\n" << res.report;
  std::cout << (res.ok ? "PASS" : "FAIL") << "\n";
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"marked-quiver representation toolkit"};
  app.require_subcommand(1);

  std::string spec_path, arrow, fields = "2,3", fixture;
  int dim_bound = 3, dim_cap = 4;
  uint32_t p_override = 0;
  bool evidence = false;

  CLI::App* validate = app.add_subcommand("validate", "check the document and its vectroids");
  validate->add_option("spec", spec_path, "specification file")->required();

  CLI::App* classify = app.add_subcommand("classify", "decide the representation type");
  classify->add_option("spec", spec_path)->required();
  classify->add_flag("--evidence", evidence, "print per-dims class counts");
  classify->add_option("--dim-bound", dim_bound, "per-vertex total dimension bound (default 3)");
  classify->add_option("--fields", fields, "comma-separated primes (default 2,3)");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list indecomposable classes");
  enumerate->add_option("spec", spec_path)->required();
  enumerate->add_option("--dim-bound", dim_bound, "per-vertex total dimension bound (default 3)");
  enumerate->add_option("--p", p_override, "field override");

  CLI::App* reduce = app.add_subcommand("reduce", "eliminate a pendant arrow");
  reduce->add_option("spec", spec_path)->required();
  reduce->add_option("--arrow", arrow)->required();
  reduce->add_option("--dim-cap", dim_cap, "enumeration cap (default 4)");

  CLI::App* verify = app.add_subcommand("verify", "run a built-in fixture");
  verify->add_option("name", fixture)->required();
  verify->add_option("--p", p_override, "field override where applicable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) return cmd_validate(spec_path);
    if (*classify) return cmd_classify(spec_path, evidence, dim_bound, fields);
    if (*enumerate) return cmd_enumerate(spec_path, dim_bound, p_override);
    if (*reduce) return cmd_reduce(spec_path, arrow, dim_cap);
    if (*verify) return cmd_verify(fixture, p_override);
  } catch (const mqr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const mqr::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const mqr::NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return 2;
  } catch (const mqr::ResourceLimit& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
