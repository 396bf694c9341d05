#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mext/json_io.hpp"
#include "mext/verify.hpp"

namespace {

using namespace mext;

std::vector<long long> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<long long> out;
  std::istringstream is(s);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    size_t used = 0;
    long long v = std::stoll(piece, &used);
    if (used != piece.size()) throw std::invalid_argument(what + ": bad integer '" + piece + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

/// JSON arguments are inline text, "@path" for a file, or "-" for stdin.
json read_json_arg(const std::string& arg, const std::string& what) {
  if (arg == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return json::parse(buf.str());
  }
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) throw std::invalid_argument(what + ": cannot open '" + arg.substr(1) + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return json::parse(buf.str());
  }
  return json::parse(arg);
}

MinExt read_ext(const std::string& arg, const std::string& what) {
  return min_ext_from_json(read_json_arg(arg, what));
}

void write_json(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << encode(j) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot open output file '" + out + "'");
  f << encode(j) << "\n";
}

std::string group_str(const FinAbGroup& g) {
  if (g.moduli.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < g.moduli.size(); ++i) {
    if (i) s += " x ";
    s += "Z" + std::to_string(g.moduli[i]);
  }
  return s;
}

BaseCategory base_from_flags(const std::string& moduli, const std::string& t) {
  FinAbGroup a = make_group(parse_int_list(moduli, "--group"));
  return make_base(a, make_elt(a, parse_int_list(t, "--t")));
}

int g_exit = 0;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mext: exact computation with minimal nondegenerate extensions of pointed "
      "symmetric fusion categories"};
  app.require_subcommand(1);
  app.footer(
      "Brute-force size guards default to 1024 elements for metric groups and 64\n"
      "for quadratic form enumeration; set MEXT_MAX_ORDER to raise or lower both.\n"
      "JSON arguments accept inline text, @path for a file, or - for stdin.\n"
      "Exit codes: 0 success, 1 violated mathematical precondition, 2 bad input.");

  // ---- group ----
  auto* cmd_group = app.add_subcommand("group", "Structure report for a finite abelian group");
  std::string gr_moduli;
  bool gr_json = false;
  cmd_group->add_option("--group", gr_moduli, "comma-separated moduli, e.g. 2,4")->required();
  cmd_group->add_flag("--json", gr_json, "emit JSON instead of text");
  cmd_group->callback([&] {
    FinAbGroup a = make_group(parse_int_list(gr_moduli, "--group"));
    FinAbGroup can = canonical_decomposition(a);
    CohomologyOrders co = cohomology_orders(a);
    if (gr_json) {
      json j;
      j["group"] = to_json(a);
      j["canonical"] = to_json(can);
      j["order"] = a.order();
      j["wedge2"] = to_json(wedge_power(a, 2));
      j["wedge3"] = to_json(wedge_power(a, 3));
      j["h2_order"] = co.h2_order;
      j["h3"] = to_json(co.h3);
      j["quad_order"] = co.quad_order;
      write_json(j, "");
    } else {
      std::cout << "group      " << group_str(a) << "\n";
      std::cout << "canonical  " << group_str(can) << "\n";
      std::cout << "order      " << a.order() << "\n";
      std::cout << "wedge^2    " << group_str(wedge_power(a, 2)) << "\n";
      std::cout << "wedge^3    " << group_str(wedge_power(a, 3)) << "\n";
      std::cout << "|H^2|      " << co.h2_order << "\n";
      std::cout << "H^3        " << group_str(co.h3) << "\n";
      std::cout << "|Quad|     " << co.quad_order << "\n";
    }
  });

  // ---- factors ----
  auto* cmd_factors =
      app.add_subcommand("factors", "Filtration factors of the group of minimal extensions");
  std::string fa_moduli, fa_t;
  bool fa_json = false;
  cmd_factors->add_option("--group", fa_moduli, "comma-separated moduli of A")->required();
  cmd_factors->add_option("--t", fa_t, "coordinates of the order-2 element t")->required();
  cmd_factors->add_flag("--json", fa_json, "emit the report as JSON");
  cmd_factors->callback([&] {
    FactorReport r = mext_factors(base_from_flags(fa_moduli, fa_t));
    if (fa_json) {
      write_json(to_json(r), "");
    } else {
      std::cout << "trivial layer   " << group_str(r.triv) << "\n";
      std::cout << "pointed/trivial " << group_str(r.pt_over_triv) << "\n";
      std::cout << "integral/pointed " << group_str(r.int_over_pt) << "\n";
      std::cout << "top             " << group_str(r.top) << "\n";
      std::cout << "total order     " << r.total_order << "\n";
      std::cout << "split           " << (r.split ? "yes" : "no") << "\n";
    }
  });

  // ---- ext ----
  auto* cmd_ext = app.add_subcommand("ext", "Build and combine minimal extensions (JSON in/out)");
  cmd_ext->require_subcommand(1);

  auto* ext_triv = cmd_ext->add_subcommand(
      "build-trivial", "Split extension on A x A^ twisted by a quadratic form on A");
  std::string bt_moduli, bt_t, bt_q = "0", bt_out;
  ext_triv->add_option("--group", bt_moduli, "comma-separated moduli of A")->required();
  ext_triv->add_option("--t", bt_t, "coordinates of t")->required();
  ext_triv->add_option("--q", bt_q, "quadratic form on A as JSON, or 0 for the zero form");
  ext_triv->add_option("--out", bt_out, "output path (default stdout)");
  ext_triv->callback([&] {
    BaseCategory base = base_from_flags(bt_moduli, bt_t);
    QuadForm q = bt_q == "0" ? zero_form(base.a) : form_from_json(read_json_arg(bt_q, "--q"));
    write_json(to_json(build_trivial(base, q)), bt_out);
  });

  auto* ext_mk = cmd_ext->add_subcommand(
      "build-mkzeta", "Cyclic-by-cyclic extension of (Z_{2^n}, t = 2^{n-1})");
  int mk_n = 0, mk_k = 0;
  long long mk_z = 1;
  std::string mk_out;
  ext_mk->add_option("--n", mk_n, "log2 of the base group order")->required();
  ext_mk->add_option("--k", mk_k, "level, 0 <= k <= n")->required();
  ext_mk->add_option("--zeta", mk_z, "odd exponent z of the root of unity (default 1)");
  ext_mk->add_option("--out", mk_out, "output path (default stdout)");
  ext_mk->callback([&] { write_json(to_json(build_m_k_zeta(mk_n, mk_k, mk_z)), mk_out); });

  auto* ext_prod = cmd_ext->add_subcommand("product", "Tensor product of two extensions");
  std::string pr_a, pr_b, pr_out;
  ext_prod->add_option("--a", pr_a, "first extension (JSON)")->required();
  ext_prod->add_option("--b", pr_b, "second extension (JSON)")->required();
  ext_prod->add_option("--out", pr_out, "output path (default stdout)");
  ext_prod->callback([&] {
    write_json(to_json(product(read_ext(pr_a, "--a"), read_ext(pr_b, "--b"))), pr_out);
  });

  auto* ext_rev = cmd_ext->add_subcommand("reverse", "Inverse class: the braiding-reversed extension");
  std::string rv_a, rv_out;
  ext_rev->add_option("--a", rv_a, "extension (JSON)")->required();
  ext_rev->add_option("--out", rv_out, "output path (default stdout)");
  ext_rev->callback([&] { write_json(to_json(reverse(read_ext(rv_a, "--a"))), rv_out); });

  auto* ext_order = cmd_ext->add_subcommand("order", "Order of the class under the tensor product");
  std::string or_a;
  long long or_cap = 64;
  ext_order->add_option("--a", or_a, "extension (JSON)")->required();
  ext_order->add_option("--cap", or_cap, "give up beyond this order (default 64)");
  ext_order->callback([&] { std::cout << order_in_mext(read_ext(or_a, "--a"), or_cap) << "\n"; });

  auto* ext_charge =
      cmd_ext->add_subcommand("charge", "Central charge as a 16th root of unity exponent");
  std::string ch_a;
  bool ch_json = false;
  ext_charge->add_option("--a", ch_a, "extension (JSON)")->required();
  ext_charge->add_flag("--json", ch_json, "emit JSON instead of text");
  ext_charge->callback([&] {
    ChargeReport c = charge_and_w(read_ext(ch_a, "--a"));
    if (ch_json) {
      json j;
      j["charge"] = std::to_string(c.k16) + "/16";
      j["cross_check"] = std::to_string(c.cross_check) + "/16";
      write_json(j, "");
    } else {
      std::cout << c.k16 << "/16\n";
    }
  });

  auto* ext_equiv = cmd_ext->add_subcommand("equiv", "Equivalence over the same base");
  std::string eq_a, eq_b;
  ext_equiv->add_option("--a", eq_a, "first extension (JSON)")->required();
  ext_equiv->add_option("--b", eq_b, "second extension (JSON)")->required();
  ext_equiv->callback([&] {
    bool eq = equivalent(read_ext(eq_a, "--a"), read_ext(eq_b, "--b")).has_value();
    std::cout << (eq ? "true" : "false") << "\n";
  });

  // ---- cocycle ----
  auto* cmd_coc = app.add_subcommand(
      "cocycle", "Standard 3-cocycle representatives, their identity check and alternator");
  std::string co_moduli, co_index;
  int co_type = 1;
  long long co_coeff = 1;
  bool co_check = false, co_alt = false, co_json = false;
  cmd_coc->add_option("--group", co_moduli, "comma-separated moduli of A")->required();
  cmd_coc->add_option("--type", co_type, "1 (diagonal carry), 2 (mixed carry), 3 (triple product)")
      ->required();
  cmd_coc->add_option("--index", co_index, "generator indices, e.g. 0 or 0,1 or 0,1,2")->required();
  cmd_coc->add_option("--coeff", co_coeff, "integer coefficient (default 1)");
  cmd_coc->add_flag("--check", co_check, "verify the 3-cocycle identity by brute force");
  cmd_coc->add_flag("--alternator", co_alt, "print the alternator on generator triples");
  cmd_coc->add_flag("--json", co_json, "emit the cocycle as JSON");
  cmd_coc->callback([&] {
    FinAbGroup a = make_group(parse_int_list(co_moduli, "--group"));
    std::vector<long long> raw = parse_int_list(co_index, "--index");
    std::vector<int> idx(raw.begin(), raw.end());
    Cocycle3 w = standard_cocycle(a, co_type, idx, co_coeff);
    if (co_json) write_json(to_json(w), "");
    if (co_check)
      std::cout << "cocycle identity: " << (check_cocycle_identity(w) ? "ok" : "VIOLATED") << "\n";
    if (co_alt) {
      Trilinear t = alternator(w);
      int r = a.rank();
      bool any = false;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          for (int k = 0; k < r; ++k)
            if (!t.at(i, j, k).is_zero()) {
              std::cout << "alternator(e" << i << ",e" << j << ",e" << k
                        << ") = " << t.at(i, j, k).num() << "/" << t.at(i, j, k).den() << "\n";
              any = true;
            }
      if (!any) std::cout << "alternator = 0\n";
    }
    if (!co_json && !co_check && !co_alt) write_json(to_json(w), "");
  });

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "Reproduce the worked examples end-to-end");
  std::string vf_suite;
  cmd_verify
      ->add_option("--suite", vf_suite, "one of: svect, z2n, z2z2, kunneth, all")
      ->required();
  cmd_verify->callback([&] {
    std::vector<CheckResult> results = verify_suite(vf_suite);
    int fails = 0;
    for (const CheckResult& r : results) {
      std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << "  " << r.detail << "\n";
      fails += r.pass ? 0 : 1;
    }
    std::cout << results.size() << " checks, " << fails << " failed\n";
    if (fails) g_exit = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const arithmetic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
