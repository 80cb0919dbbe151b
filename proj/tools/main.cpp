#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "build.hpp"
#include "prolim/generators.hpp"
#include "report.hpp"

using namespace prolim;
using namespace prolim::cli;

namespace {

struct Options {
  std::string spec_path;
  std::optional<int> depth;
  std::optional<int> search;
  std::uint64_t seed = 1;
  bool json = false;
  bool timing = false;
  std::string method = "product";
  std::string x, y;
  int samples = 5;
};

/// --depth, then the spec's budget, then PROLIM_DEPTH_DEFAULT, then 4.
TruncationBudget resolve_budget(const Options& o, const SpecFile* spec) {
  int depth = 4;
  if (const char* env = std::getenv("PROLIM_DEPTH_DEFAULT")) {
    try {
      depth = std::stoi(env);
    } catch (const std::exception&) {
      throw PreconditionFailure("PROLIM_DEPTH_DEFAULT must be an integer, got '" + std::string(env) + "'");
    }
  }
  if (spec && spec->depth) depth = *spec->depth;
  if (o.depth) depth = *o.depth;
  int search = depth + 2;
  if (spec && spec->search && !o.depth) search = *spec->search;
  if (o.search) search = *o.search;
  if (depth < 0) throw PreconditionFailure("depth must be >= 0");
  return TruncationBudget::at(depth, std::max(search, depth));
}

template <BaseCategory C>
SerializedObject serialize(const std::string& name, const ProObject<C>& x, int depth,
                           const std::string& rule = "") {
  SerializedObject s{name, x.index()->name(), rule, {}};
  for (const auto& i : x.indices(depth)) s.levels.emplace_back(index_str(i), C::describe(x.at(i)));
  return s;
}

template <BaseCategory C>
void serialize_spec_object(Report& r, Builder<C>& b, const std::string& name) {
  const auto& o = b.spec().object(name, 0);
  r.objects.push_back(serialize(name, b.object(name, o.line), b.budget().depth, o.describe()));
}

template <BaseCategory C>
void cmd_levelrep(Builder<C>& b, Report& r) {
  const auto d = b.diagram(b.spec().diagram);
  const auto rep = level_replace(d, b.budget());
  r.facts.emplace_back("method", rep.method);
  r.facts.emplace_back("index", rep.index->name());
  for (int a : d.objects())
    r.objects.push_back(serialize("~" + d.shape()->object_name(a), rep.object(a), b.budget().depth));
  r.checks.push_back(verify_level_representation(rep, b.budget()));
}

template <BaseCategory C>
void cmd_prolim(Builder<C>& b, Report& r, const std::string& method) {
  if constexpr (!HasFiniteLimits<C>) {
    throw UnsupportedCapability(C::name() + " has no finite limits");
  } else {
  const auto& budget = b.budget();
  r.facts.emplace_back("method", method);
  if (b.spec().tower.present) {
    const auto d = b.tower();
    const auto l = cofiltered_limit(d, budget);
    r.objects.push_back(serialize("lim", l.limit.apex, budget.depth));
    auto conditions = verify_conditions(l.limit.representation, budget);
    r.checks.push_back(conditions);
    ProCone<C> cone{l.limit.apex, l.limit.legs, "limit cone"};
    r.checks.push_back(is_cone(l.limit.diagram, cone, budget));
    if (method == "pairs") {
      if constexpr (EnumerableCategory<C>) {
        const auto alt = cofiltered_limit_alt(d, budget);
        r.checks.push_back(alt.comparison);
        r.facts.emplace_back("pair-category parallel arrows", alt.parallel ? "yes" : "no");
      } else {
        throw UnsupportedCapability(C::name() + ": the pairs method needs enumerable Hom sets");
      }
    }
    return;
  }
  if (method == "pairs") throw PreconditionFailure("--method pairs needs a 'tower' section");
  const auto d = b.diagram(b.spec().diagram);
  const auto l = finite_limit_pro(d, budget);
  r.objects.push_back(serialize("lim", l.apex, budget.depth));
  r.checks.push_back(verify_conditions(l.representation, budget));
  ProCone<C> cone{l.apex, l.legs, "limit cone"};
  r.checks.push_back(is_cone(l.diagram, cone, budget));
  }
}

template <BaseCategory C>
void cmd_procolim(Builder<C>& b, Report& r) {
  const auto& budget = b.budget();
  const auto d = b.diagram(b.spec().diagram);
  const auto z = cofinite_colimit(d, budget);
  r.facts.emplace_back("method", z.method);
  r.facts.emplace_back("index", z.apex.index()->name());
  r.objects.push_back(serialize("colim", z.apex, budget.depth));
  r.checks.push_back(z.stabilization);
  r.checks.push_back(verify_bar_diagram(z, budget));
  if (d.shape()->finite_size()) r.checks.push_back(compare_with_finite(z, finite_colimit_pro(d, budget), budget));
}

template <BaseCategory C>
void cmd_homset(Builder<C>& b, Report& r, const std::string& xn, const std::string& yn) {
  if constexpr (EnumerableCategory<C>) {
    const auto x = b.object(xn, 0);
    const auto y = b.object(yn, 0);
    const auto h = hom_bounded(x, y, b.budget());
    Certificate c{"Hom(" + xn + ", " + yn + ")", h.verdict, b.budget().depth, {}, ""};
    c.witnesses.push_back(std::to_string(h.size()) + " classes");
    for (std::size_t k = 0; k < h.targets.size(); ++k)
      c.witnesses.push_back("at " + index_str(h.targets[k]) + ": " + std::to_string(h.classes[k].size()) +
                            " classes of colim_t Hom(" + xn + "_t, " + yn + "_s)");
    r.facts.emplace_back("classes", std::to_string(h.size()));
    serialize_spec_object(r, b, xn);
    if (yn != xn) serialize_spec_object(r, b, yn);
    r.checks.push_back(std::move(c));
  } else {
    throw UnsupportedCapability(C::name() + " does not enumerate Hom sets");
  }
}

template <BaseCategory C>
void cmd_check_commute(Builder<C>& b, Report& r) {
  const auto x = b.product_diagram();
  const auto res = check_commute(x, b.budget());
  r.objects.push_back(serialize("lim colim", res.lim_colim.limit.apex, b.budget().depth));
  r.checks.push_back(res.certificate);
}

/// Sample systems of constants c(Y_0) <- c(Y_1) <- ... drawn from the seed.
template <BaseCategory C>
std::vector<CofilteredDiagram<C>> samples(int count, std::uint64_t seed);

template <>
std::vector<CofilteredDiagram<FinSet>> samples(int count, std::uint64_t seed) {
  gen::Rng rng(seed);
  std::vector<CofilteredDiagram<FinSet>> out;
  for (int k = 0; k < count; ++k)
    out.push_back(gen::random_tower(rng, gen::uniform(rng, 2, 5), 3).constants("Y" + std::to_string(k)));
  return out;
}

template <>
std::vector<CofilteredDiagram<FinAb>> samples(int count, std::uint64_t seed) {
  gen::Rng rng(seed);
  std::vector<CofilteredDiagram<FinAb>> out;
  for (int k = 0; k < count; ++k) {
    // Z/2^{e_n} with non-increasing exponents down the tower, reduction maps.
    const int levels = gen::uniform(rng, 2, 4);
    std::vector<int> e{gen::uniform(rng, 0, 2)};
    for (int n = 1; n < levels; ++n) e.push_back(e.back() + gen::uniform(rng, 0, 1));
    auto obj = [e](int n) {
      return FinAb::cyclic(std::int64_t{1} << e[static_cast<std::size_t>(std::min<int>(n, static_cast<int>(e.size()) - 1))]);
    };
    auto cobj = [obj](int n) { return ProObject<FinAb>::constant(obj(n), "cY" + std::to_string(n)); };
    out.push_back(detail::tower_diagram<FinAb>(
        cobj,
        [obj, cobj](int n) {
          return ProMap<FinAb>::constant(cobj(n + 1), cobj(n), Rules<FinAb>::map("reduce", obj(n + 1), obj(n)));
        },
        "Y" + std::to_string(k)));
  }
  return out;
}

template <BaseCategory C>
std::vector<CofilteredDiagram<C>> samples(int, std::uint64_t) {
  throw UnsupportedCapability(C::name() + ": no sample systems");
}

template <BaseCategory C>
void cmd_cocompact(Builder<C>& b, Report& r, const std::string& xn, int count, std::uint64_t seed) {
  if constexpr (EnumerableCategory<C>) {
    const auto x = b.object(xn, 0);
    r.facts.emplace_back("samples", std::to_string(count));
    r.facts.emplace_back("seed", std::to_string(seed));
    serialize_spec_object(r, b, xn);
    r.checks.push_back(cocompact_check(x, samples<C>(count, seed), b.budget()));
  } else {
    throw UnsupportedCapability(C::name() + " does not enumerate Hom sets");
  }
}

template <class F>
void with_base(const std::string& base, F&& f) {
  if (base == "finset") f.template operator()<FinSet>();
  else if (base == "finab") f.template operator()<FinAb>();
  else f.template operator()<FreeAb>();
}

std::string base_name(const std::string& base) {
  if (base == "finset") return FinSet::name();
  if (base == "finab") return FinAb::name();
  return FreeAb::name();
}

int emit(Report& r, const Options& o, std::chrono::steady_clock::time_point t0) {
  if (o.timing)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (o.json ? r.json() : r.text());
  return exit_code(r.verdict());
}

int run(const std::string& command, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.command = command;
  std::optional<SpecFile> spec;
  try {
    if (command == "repro-inexactness") {
      const auto budget = resolve_budget(o, nullptr);
      r.digest = sha256_hex("repro-inexactness depth=" + std::to_string(budget.depth));
      r.base = FreeAb::name();
      r.depth = budget.depth;
      r.search_depth = budget.depth + 2;
      const auto w = build_inexactness_witness(budget.depth);
      r.facts.emplace_back("horizon", std::to_string(w.horizon));
      r.objects.push_back(serialize("X", w.x, budget.depth, "A[0,m]"));
      r.objects.push_back(serialize("Y", w.y, budget.depth, "A[n,H]"));
      for (const auto& c : w.certificates()) r.checks.push_back(c);
      return emit(r, o, t0);
    }
    spec = load_spec(o.spec_path);
    const auto budget = resolve_budget(o, &*spec);
    r.digest = sha256_hex(spec->bytes);
    r.base = base_name(spec->base);
    r.depth = budget.depth;
    r.search_depth = budget.search_depth;
    with_base(spec->base, [&]<BaseCategory C>() {
      Builder<C> b(*spec, budget);
      if (command == "levelrep") cmd_levelrep(b, r);
      else if (command == "prolim") cmd_prolim(b, r, o.method);
      else if (command == "procolim") cmd_procolim(b, r);
      else if (command == "homset") cmd_homset(b, r, o.x, o.y);
      else if (command == "check-commute") {
        if constexpr (HasFiniteColimits<C>) cmd_check_commute(b, r);
      } else if (command == "cocompact") cmd_cocompact(b, r, o.x, o.samples, o.seed);
    });
    return emit(r, o, t0);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const VerificationFailure& e) {
    r.checks.push_back({"verification", Verdict::refuted, r.depth, {}, e.what()});
    return emit(r, o, t0);
  } catch (const BudgetError& e) {
    r.checks.push_back({"search budget", Verdict::exhausted, r.depth, {}, e.what()});
    return emit(r, o, t0);
  } catch (const prolim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pro-object constructions and checks on finitely presented diagrams"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 1;

  auto common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec) sub->add_option("spec", o.spec_path, "YAML diagram spec")->required()->check(CLI::ExistingFile);
    sub->add_option("--depth", o.depth, "truncation depth (default: spec, PROLIM_DEPTH_DEFAULT, 4)");
    sub->add_option("--search", o.search, "search depth (default: depth + 2)");
    sub->add_flag("--json", o.json, "machine-readable report");
    sub->add_flag("--timing", o.timing, "include wall time (reports stop being byte-identical)");
    sub->add_option("--seed", seed, "seed for sampled systems");
  };

  auto* levelrep = app.add_subcommand("levelrep", "level representation of the spec's diagram");
  common(levelrep, true);
  auto* prolim_cmd = app.add_subcommand("prolim", "limit of the spec's tower or finite diagram");
  common(prolim_cmd, true);
  prolim_cmd->add_option("--method", o.method, "product or pairs")->check(CLI::IsMember({"product", "pairs"}));
  auto* procolim = app.add_subcommand("procolim", "colimit of the spec's diagram");
  common(procolim, true);
  auto* homset = app.add_subcommand("homset", "bounded Hom set between two spec objects");
  common(homset, true);
  homset->add_option("X", o.x, "source object")->required();
  homset->add_option("Y", o.y, "target object")->required();
  auto* commute = app.add_subcommand("check-commute", "cofiltered limits against finite colimits");
  common(commute, true);
  auto* repro = app.add_subcommand("repro-inexactness", "the built-in inexactness scenario");
  common(repro, false);
  auto* cocompact = app.add_subcommand("cocompact", "cocompactness of a spec object on sampled systems");
  common(cocompact, true);
  cocompact->add_option("X", o.x, "object")->required();
  cocompact->add_option("--samples", o.samples, "number of sampled systems")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  o.seed = seed;
  for (auto* sub : app.get_subcommands()) {
    try {
      return run(sub->get_name(), o);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
