#include <boost/program_options.hpp>
#include <iostream>
#include <string>

#include "rifscatter/commands.hpp"
#include "rifscatter/version.hpp"

namespace po = boost::program_options;

namespace {

void print_usage(const po::options_description& opts) {
  std::cout << "usage: rifscatter <command> [options]\n\n"
            << "commands:\n"
            << "  dispersion   refractive and group index of both media\n"
            << "  modes        all local modes at a fixed comoving frequency\n"
            << "  sli          subluminal intervals and widths versus step height\n"
            << "  spectrum     moving-frame emission spectrum\n"
            << "  labspectrum  lab-frame emission spectrum per wavelength\n"
            << "  photons      photon number for the configured length\n"
            << "  sweep        photon number and widths across step heights\n\n"
            << opts << "\n"
            << "Settings resolve in order: defaults, --config file, RIFSCATTER_*\n"
            << "environment variables, then command line flags.\n";
}

}  // namespace

int main(int argc, char** argv) {
  po::options_description opts("options");
  opts.add_options()
      ("help,h", "show this help")
      ("version", "print the tool version")
      ("config", po::value<std::string>(), "key=value config file")
      ("delta-n", po::value<double>(), "index step height")
      ("u", po::value<double>(), "front speed as a fraction of c")
      ("omega-prime", po::value<double>(), "comoving frequency in rad/s (modes)")
      ("grid-points", po::value<int>(), "points in the comoving frequency grid")
      ("lab-points", po::value<int>(), "points in the lab wavelength grid")
      ("lab-min-nm", po::value<double>(), "lab grid lower wavelength in nm")
      ("lab-max-nm", po::value<double>(), "lab grid upper wavelength in nm")
      ("length-mm", po::value<double>(), "propagation length in mm")
      ("delta-n-list", po::value<std::string>(), "comma list of step heights (sli, sweep)")
      ("jobs", po::value<int>(), "worker threads for grids")
      ("out", po::value<std::string>(), "output directory");

  po::options_description hidden;
  hidden.add_options()("command", po::value<std::string>(), "subcommand");
  po::positional_options_description pos;
  pos.add("command", 1);
  po::options_description all;
  all.add(opts).add(hidden);

  po::variables_map vm;
  try {
    po::store(
        po::command_line_parser(argc, argv).options(all).positional(pos).run(), vm);
    po::notify(vm);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (vm.count("version")) {
    std::cout << "rifscatter " << rif::version() << "\n";
    return 0;
  }
  if (vm.count("help") || !vm.count("command")) {
    print_usage(opts);
    return vm.count("help") ? 0 : 2;
  }

  const std::string command = vm["command"].as<std::string>();
  try {
    rif::RunConfig cfg;
    if (vm.count("config")) {
      rif::apply_config_file(cfg, vm["config"].as<std::string>());
    }
    rif::apply_environment(cfg);
    if (vm.count("delta-n")) {
      cfg.delta_n = vm["delta-n"].as<double>();
    }
    if (vm.count("u")) {
      cfg.u = vm["u"].as<double>();
    }
    if (vm.count("omega-prime")) {
      cfg.omega_prime = vm["omega-prime"].as<double>();
    }
    if (vm.count("grid-points")) {
      cfg.omega_points = vm["grid-points"].as<int>();
    }
    if (vm.count("lab-points")) {
      cfg.lab_points = vm["lab-points"].as<int>();
    }
    if (vm.count("lab-min-nm")) {
      cfg.lab_min_nm = vm["lab-min-nm"].as<double>();
    }
    if (vm.count("lab-max-nm")) {
      cfg.lab_max_nm = vm["lab-max-nm"].as<double>();
    }
    if (vm.count("length-mm")) {
      cfg.length_mm = vm["length-mm"].as<double>();
    }
    if (vm.count("delta-n-list")) {
      rif::apply_key_value(cfg, "sweep.delta_n", vm["delta-n-list"].as<std::string>());
    }
    if (vm.count("jobs")) {
      cfg.jobs = vm["jobs"].as<int>();
    }
    if (vm.count("out")) {
      cfg.out_dir = vm["out"].as<std::string>();
    }

    if (command == "dispersion") {
      rif::cmd_dispersion(cfg);
    } else if (command == "modes") {
      rif::cmd_modes(cfg);
    } else if (command == "sli") {
      rif::cmd_sli(cfg);
    } else if (command == "spectrum") {
      rif::cmd_spectrum(cfg);
    } else if (command == "labspectrum") {
      rif::cmd_labspectrum(cfg);
    } else if (command == "photons") {
      rif::cmd_photons(cfg);
    } else if (command == "sweep") {
      rif::cmd_sweep(cfg);
    } else {
      std::cerr << "error: unknown command '" << command << "'\n";
      return 2;
    }
  } catch (const rif::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
