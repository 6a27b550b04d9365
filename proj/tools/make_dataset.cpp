// Regenerates data/btc_data.csv deterministically from the parameters in
// dataset_gen.hpp. The committed defaults are the ones the bundled file was
// produced with; rerunning with no flags must reproduce it byte for byte.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dataset_gen.hpp"

int main(int argc, char** argv) {
    CLI::App app{"regenerate the bundled synthetic daily dataset"};
    std::string out_path = "data/btc_data.csv";
    dataset::Params p;
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--seed", p.seed, "Gaussian stream seed");
    app.add_option("--kappa", p.kappa, "return rescale factor");
    app.add_option("--lnvar-main", p.lnvar_main, "main-regime long-run log variance");
    app.add_option("--lnvar-calm", p.lnvar_calm, "calm-regime long-run log variance");
    app.add_option("--gamma", p.eg_gamma, "innovation asymmetry coefficient");
    app.add_option("--drift-main", p.drift_main, "main-regime daily drift");
    app.add_option("--fee-sigma", p.fee_sigma, "fee log-change noise scale");
    CLI11_PARSE(app, argc, argv);

    const dataset::Columns cols = dataset::generate(p);

    const int n1 = p.total_rows - p.era2_rows;
    const double era1_max =
        *std::max_element(cols.price.begin(), cols.price.begin() + n1);
    const double era2_min = *std::min_element(cols.price.begin() + n1, cols.price.end());
    if (era1_max >= 100.0 || era2_min < 100.0) {
        std::cerr << "era boundary violated: era1 max " << era1_max << ", era2 min "
                  << era2_min << "\n";
        return 1;
    }

    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    f << dataset::to_csv(cols);
    f.close();
    if (!f) {
        std::cerr << "write failed: " << out_path << "\n";
        return 1;
    }

    std::cerr << "wrote " << out_path << ": " << cols.dates.size() << " rows, "
              << cols.dates.front() << ".." << cols.dates.back() << ", era2 rows "
              << p.era2_rows << " (min " << era2_min << ")\n";
    return 0;
}
