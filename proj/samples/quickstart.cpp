// Minimal end-to-end use of the library: synthesize a small market, take
// one currency as base, and print the spectrum, the tree and the fit.

#include <iostream>

#include "fxmst/fxmst.hpp"

int main() {
    using namespace fxmst;

    MarketModel model;
    model.n_currencies = 20;
    model.T = 750;
    model.hub_strength = 0.7;
    model.blocs = {{8, 0.8}, {5, 0.6}};
    model.drifters = 2;

    const RatePanel panel = generate_market(model, RandomSeed{7});
    const RatePanel rebased = rebase(panel, CurrencyCode{"BAA"});
    const ReturnMatrix returns = log_returns(rebased, 1);
    const CorrelationMatrix corr = correlation(returns);

    const SpectrumReport report = spectrum(corr);
    std::cout << "N = " << corr.size() << ", T = " << corr.sample_count() << "\n";
    std::cout << "lambda_max = " << report.lambda_max() << " (" << to_string(report.regime())
              << "), lambda_second = " << report.lambda_second() << "\n";

    const MstTree tree = build_mst(distances(corr));
    std::cout << "tree weight = " << tree.total_weight() << "\n";

    const DegreeDistribution dist = degree_distribution(tree);
    const PowerFit fit = fit_power(dist);
    std::cout << "alpha = " << fit.alpha << " +- " << fit.delta_alpha << " ("
              << to_string(fit.quality) << ")\n";

    std::cout << "\n" << export_multiplicities(tree);
    return 0;
}
