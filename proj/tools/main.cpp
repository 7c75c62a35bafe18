// towerclosure: integral closure of class-one radical towers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tc/app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Integral closure of radical towers over Z[x] localized at (p, x)"};
    app.require_subcommand(1);

    std::string spec_path, output_path, element;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<unsigned> k_candidates;

    const std::pair<const char*, const char*> commands[] = {
        {"check", "validate the hypotheses"},
        {"basis", "print the closure basis, one entry per line"},
        {"verify", "closure, integrality witnesses and oracle crosscheck"},
        {"reduce", "coordinates of an element over the basis"},
        {"pipeline", "strip, substitute k-th roots, certify and rebuild"},
        {"disjoint", "linear disjointness of the disjoint block mod p"},
    };
    std::vector<CLI::App*> subs;
    std::vector<CLI::Option*> seed_opts, sample_opts, k_opts;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--spec", spec_path, "spec file")->required()->check(CLI::ExistingFile);
        sub->add_option("--output", output_path, "write the report here instead of stdout");
        seed_opts.push_back(sub->add_option("--seed", seed, "random seed for sampling"));
        sample_opts.push_back(sub->add_option("--samples", samples, "number of oracle samples"));
        k_opts.push_back(sub->add_option("--k-candidates", k_candidates, "k values tried by pipeline")->delimiter(','));
        if (std::string(name) == "reduce") sub->add_option("element", element, "p^-<k> * <poly>")->required();
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    tc::RunOptions opts;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        opts.command = subs[i]->get_name();
        if (seed_opts[i]->count()) opts.seed = seed;
        if (sample_opts[i]->count()) opts.samples = samples;
        if (k_opts[i]->count()) opts.k_candidates = k_candidates;
    }
    opts.element = element;

    std::ifstream in(spec_path);
    if (!in) {
        std::cerr << "cannot read " << spec_path << "\n";
        return tc::kRejected;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    if (output_path.empty()) return tc::run(opts, buf.str(), std::cout, std::cerr);
    std::ofstream out(output_path);
    if (!out) {
        std::cerr << "cannot write " << output_path << "\n";
        return tc::kRejected;
    }
    return tc::run(opts, buf.str(), out, std::cerr);
}
