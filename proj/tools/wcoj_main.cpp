#include <wcoj/commands.hpp>

#include <CLI11.hpp>

#include <iostream>


int main(int argc, char **argv)
{
    using namespace wcoj::cli;

    CLI::App app{"Worst-case optimal joins and uniform join sampling over CSV relations"};
    app.require_subcommand(1);

    JoinOptions join;
    auto *join_cmd = app.add_subcommand("join", "Enumerate every answer of the join");
    join_cmd->add_option("spec", join.spec, "JSON query spec")->required();
    join_cmd->add_option("--order", join.order, "Variable order, comma separated");
    join_cmd->add_flag("--no-binarise", join.no_binarise, "Run the join on the original domain");
    join_cmd->add_option("--stats-out", join.stats_out, "Write run statistics as JSON");
    join_cmd->add_option("--output,-o", join.output, "Write answers here instead of stdout");

    SampleOptions sample;
    auto *sample_cmd = app.add_subcommand("sample", "Draw answers uniformly at random, with replacement");
    sample_cmd->add_option("spec", sample.spec, "JSON query spec")->required();
    sample_cmd->add_option("--count,-k", sample.count, "Number of answers")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", sample.seed, "Generator seed (default: $SEED, else 0)");
    sample_cmd->add_option("--estimator", sample.estimator, "agm or pm")->check(CLI::IsMember({"agm", "pm"}));
    sample_cmd->add_option("--max-work", sample.max_work, "Give up after this many walks");
    sample_cmd->add_option("--order", sample.order, "Variable order, comma separated");
    sample_cmd->add_option("--stats-out", sample.stats_out, "Write sampler statistics as JSON");
    sample_cmd->add_option("--output,-o", sample.output, "Write answers here instead of stdout");

    std::filesystem::path cover_spec;
    auto *cover_cmd = app.add_subcommand("cover", "Solve the fractional cover LP and print the bound");
    cover_cmd->add_option("spec", cover_spec, "JSON query spec")->required();

    std::filesystem::path validate_spec;
    auto *validate_cmd = app.add_subcommand("validate", "Check degree constraints against the data");
    validate_cmd->add_option("spec", validate_spec, "JSON query spec")->required();

    std::filesystem::path oracle_spec;
    auto *oracle_cmd = app.add_subcommand("oracle", "");
    oracle_cmd->add_option("spec", oracle_spec)->required();
    oracle_cmd->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::bad_input;
    }

    if (*join_cmd)
        return cmd_join(join, std::cout, std::cerr);
    if (*sample_cmd)
        return cmd_sample(sample, std::cout, std::cerr);
    if (*cover_cmd)
        return cmd_cover(cover_spec, std::cout, std::cerr);
    if (*validate_cmd)
        return cmd_validate(validate_spec, std::cout, std::cerr);
    if (*oracle_cmd)
        return cmd_oracle(oracle_spec, std::cout, std::cerr);
    return exit_code::failure;
}
