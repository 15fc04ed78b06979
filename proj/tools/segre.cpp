#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "segre/io.hpp"
#include "segre/membership.hpp"
#include "segre/normal_forms.hpp"
#include "segre/strassen.hpp"
#include "segre/symmetric.hpp"

// Exit codes: 0 = member / condition holds, 1 = non-member / condition fails,
// 2 = bad input or violated precondition. Verdicts are fully decided by the
// exit code; stdout is for humans and --json consumers.

namespace {

int verdict_code(segre::Verdict v) { return v == segre::Verdict::Member ? 0 : 1; }

void print_certificate(const segre::Certificate& cert, bool json) {
    if (json)
        std::cout << segre::to_json(cert).dump(2) << '\n';
    else
        std::cout << segre::to_string(cert.verdict) << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"exact membership tests for third secant varieties of Segre products"};
    app.require_subcommand(1);

    std::string tensor_file, form_file, out_file, family;
    std::vector<std::size_t> dims, left;
    std::size_t mode_a = 0, mode_b = 0, pivot = 0, cat_a = 0;
    std::uint64_t seed = 0;
    bool full_trace = false, as_json = false, sparse = false;

    auto* s3 = app.add_subcommand("sigma3", "decide membership in the third secant variety");
    s3->add_option("--tensor", tensor_file, "tensor file")->required();
    s3->add_flag("--full-trace", full_trace, "evaluate every test, not just up to the witness");
    s3->add_flag("--json", as_json, "print the full certificate as JSON");

    auto* s2 = app.add_subcommand("sigma2", "decide membership in the second secant variety");
    s2->add_option("--tensor", tensor_file, "tensor file")->required();
    s2->add_flag("--json", as_json, "print the full certificate as JSON");

    auto* rk = app.add_subcommand("rank", "rank of the flattening with the given left modes");
    rk->add_option("--tensor", tensor_file, "tensor file")->required();
    rk->add_option("--left", left, "left mode set, e.g. 0,2")->delimiter(',')->required();

    auto* st = app.add_subcommand("strassen", "exterior flattening rank against the rank-3 bound");
    st->add_option("--tensor", tensor_file, "tensor file")->required();
    st->add_option("--a", mode_a, "wedge mode")->required();
    st->add_option("--b", mode_b, "matrix mode")->required();

    auto* cm = app.add_subcommand("commutator", "degree-4 commutator test for 3x3x3 tensors");
    cm->add_option("--tensor", tensor_file, "tensor file")->required();

    auto* gn = app.add_subcommand("gen", "generate a seeded normal-form instance");
    gn->add_option("--family", family, "family name, e.g. sigma3-type2 or generic-rank4")
        ->required();
    gn->add_option("--dims", dims, "mode dimensions, e.g. 3,3,3")->delimiter(',')->required();
    gn->add_option("--seed", seed, "RNG seed");
    gn->add_option("--out", out_file, "output tensor file")->required();
    gn->add_flag("--sparse", sparse, "write the sparse encoding");

    auto* sy = app.add_subcommand("symmetrize", "run the symmetrization pipeline");
    sy->add_option("--tensor", tensor_file, "tensor file")->required();
    sy->add_option("--pivot", pivot, "pivot mode")->required();
    sy->add_option("--out", out_file, "output file for the symmetric tensor")->required();

    auto* ct = app.add_subcommand("catalecticant", "rank of the degree-(a, d-a) catalecticant");
    ct->add_option("--form", form_file, "symmetric tensor file")->required();
    ct->add_option("--a", cat_a, "lower degree")->required();

    auto* cl = app.add_subcommand("classify", "locate a member in the case analysis");
    cl->add_option("--tensor", tensor_file, "tensor file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (s3->parsed()) {
        segre::Sigma3Options opt;
        opt.full_trace = full_trace;
        auto cert = segre::sigma3(segre::read_tensor(tensor_file), opt);
        print_certificate(cert, as_json);
        return verdict_code(cert.verdict);
    }
    if (s2->parsed()) {
        auto cert = segre::sigma2(segre::read_tensor(tensor_file));
        print_certificate(cert, as_json);
        return verdict_code(cert.verdict);
    }
    if (rk->parsed()) {
        segre::Tensor t = segre::read_tensor(tensor_file);
        std::cout << segre::flattening_rank(t, segre::Bipartition(left, t.order())) << '\n';
        return 0;
    }
    if (st->parsed()) {
        segre::Tensor t = segre::read_tensor(tensor_file);
        auto rep = segre::strassen_ok(t, segre::Tripartition(mode_a, mode_b, t.order()), 3);
        std::cout << "rank " << rep.rank << " bound " << rep.bound << '\n';
        return rep.ok ? 0 : 1;
    }
    if (cm->parsed()) {
        segre::Matrix c = segre::strassen_commutator(segre::read_tensor(tensor_file));
        bool zero = c.is_zero();
        std::cout << (zero ? "zero" : "nonzero") << '\n';
        return zero ? 0 : 1;
    }
    if (gn->parsed()) {
        segre::NormalFormSpec spec;
        auto [fam, rank] = segre::parse_family(family);
        spec.family = fam;
        spec.rank = rank;
        spec.dims = dims;
        spec.seed = seed;
        segre::write_tensor(out_file, segre::generate(spec), sparse);
        return 0;
    }
    if (sy->parsed()) {
        auto rep = segre::symmetrization_pipeline(segre::read_tensor(tensor_file), pivot);
        if (!rep.ok) {
            std::cout << "blocked at mode " << rep.blocking_mode << '\n';
            return 1;
        }
        segre::write_tensor(out_file, rep.form->tensor());
        return 0;
    }
    if (ct->parsed()) {
        segre::SymTensor f{segre::read_tensor(form_file)};
        std::cout << segre::rank(segre::catalecticant(f, cat_a)) << '\n';
        return 0;
    }
    if (cl->parsed()) {
        segre::CaseLabel label = segre::classify_case(segre::read_tensor(tensor_file));
        std::cout << segre::to_string(label) << '\n';
        return label == segre::CaseLabel::Outside ? 1 : 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const segre::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
