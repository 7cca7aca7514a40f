#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqrc/commands.hpp"

namespace {

void add_input_flags(CLI::App* cmd, fqrc::cli::InputOptions& opt, std::vector<double>& inline_x,
                     double& cut) {
  cmd->add_option("--model", opt.model, "Model file written by `train`")->required();
  auto* input = cmd->add_option("--input", opt.input, "CSV with f:<name> columns");
  auto* x = cmd->add_option("--x", inline_x, "Inline feature vector, comma separated")
                ->delimiter(',')
                ->allow_extra_args(false);
  input->excludes(x);
  cmd->add_option("--alpha-cut", cut, "Zero confidences below this value and renormalize")
      ->check(CLI::Range(0.0, 1.0));
}

void finish_input(const CLI::App* cmd, fqrc::cli::InputOptions& opt,
                  const std::vector<double>& inline_x, double cut) {
  if (cmd->count("--x")) opt.inline_x = inline_x;
  if (cmd->count("--alpha-cut")) opt.alpha_cut = cut;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = fqrc::cli;
  CLI::App app{"Fuzzy qualitative rank classifier: train, infer, rank, evaluate"};
  app.require_subcommand(1);

  // train
  cli::TrainOptions train_opt;
  auto* train_cmd = app.add_subcommand("train", "Learn a four-tuple model from a labeled CSV");
  train_cmd->add_option("dataset", train_opt.dataset, "Training CSV")->required();
  train_cmd->add_option("--out", train_opt.out, "Model output path")->required();
  train_cmd->add_option("--bins", train_opt.bins, "Histogram bins per feature/class")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--classes", train_opt.classes, "Explicit class list and order")
      ->delimiter(',');

  // infer
  cli::InferOptions infer_opt;
  std::vector<double> infer_x;
  double infer_cut = 0.0;
  auto* infer_cmd = app.add_subcommand("infer", "Print normalized class confidences");
  add_input_flags(infer_cmd, infer_opt, infer_x, infer_cut);
  infer_cmd->add_flag("--binary", infer_opt.binary, "Append the argmax class (1-based)");
  infer_cmd->add_option("--precision", infer_opt.precision, "Decimals in the output")
      ->check(CLI::Range(0, 17));

  // rank
  cli::RankOptions rank_opt;
  std::vector<double> rank_x;
  double rank_cut = 0.0;
  std::vector<double> thresholds;
  std::string diff_rule = "adjacent";
  auto* rank_cmd = app.add_subcommand("rank", "Print symbolic ranking interpretations");
  add_input_flags(rank_cmd, rank_opt, rank_x, rank_cut);
  rank_cmd->add_option("--thresholds", thresholds, "Upper bounds eq,hi,much (default 0,0.5,1)")
      ->delimiter(',')
      ->expected(3);
  rank_cmd->add_option("--diff-rule", diff_rule, "Difference against the previous class or the top")
      ->check(CLI::IsMember({"adjacent", "max"}));

  // evaluate
  cli::EvaluateOptions eval_opt;
  std::string protocol = "loo";
  std::string classifier = "fqrc";
  std::string model_path, manifest_path, report_path;
  double eval_cut = 0.0, ref_cut = 0.0;
  auto* eval_cmd = app.add_subcommand("evaluate", "Run an evaluation protocol and report metrics");
  eval_cmd->add_option("dataset", eval_opt.dataset, "Labeled CSV")->required();
  eval_cmd->add_option("--model", model_path, "Pre-trained model (manifest protocol)");
  eval_cmd->add_option("--protocol", protocol, "loo or manifest")
      ->check(CLI::IsMember({"loo", "manifest"}));
  eval_cmd->add_option("--manifest", manifest_path, "CSV `index,split` for the manifest protocol");
  eval_cmd->add_option("--classifier", classifier, "fqrc or knn")
      ->check(CLI::IsMember({"fqrc", "knn"}));
  eval_cmd->add_option("--k", eval_opt.knn_k, "Neighbors for knn")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--bins", eval_opt.bins, "Histogram bins when training")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--alpha", eval_opt.params.alpha, "Forgiveness rate of the score")
      ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--beta", eval_opt.params.beta_w, "Weight on missed labels");
  eval_cmd->add_option("--gamma", eval_opt.params.gamma_w, "Weight on false positives");
  eval_cmd->add_option("--alpha-cut", eval_cut, "Cut applied to predicted distributions")
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--ref-alpha-cut", ref_cut, "Cut applied to reference distributions")
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--out", report_path, "Key-value report output path");
  eval_cmd->add_option("--classes", eval_opt.classes, "Explicit class list and order")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitData;
  }

  if (train_cmd->parsed()) return cli::cmd_train(train_opt, std::cout, std::cerr);

  if (infer_cmd->parsed() || rank_cmd->parsed()) {
    CLI::App* cmd = infer_cmd->parsed() ? infer_cmd : rank_cmd;
    if (!cmd->count("--input") && !cmd->count("--x")) {
      std::cerr << "error: one of --input or --x is required\n";
      return cli::kExitData;
    }
    if (infer_cmd->parsed()) {
      finish_input(infer_cmd, infer_opt, infer_x, infer_cut);
      return cli::cmd_infer(infer_opt, std::cout, std::cerr);
    }
    finish_input(rank_cmd, rank_opt, rank_x, rank_cut);
    if (!thresholds.empty())
      rank_opt.thresholds = fqrc::RankThresholds{thresholds[0], thresholds[1], thresholds[2]};
    rank_opt.rule = diff_rule == "max" ? fqrc::DiffRule::FromMax : fqrc::DiffRule::Adjacent;
    return cli::cmd_rank(rank_opt, std::cout, std::cerr);
  }

  eval_opt.protocol = protocol == "manifest" ? cli::Protocol::Manifest : cli::Protocol::LeaveOneOut;
  eval_opt.classifier = classifier == "knn" ? cli::Classifier::Knn : cli::Classifier::Fqrc;
  if (eval_cmd->count("--model")) eval_opt.model = model_path;
  if (eval_cmd->count("--manifest")) eval_opt.manifest = manifest_path;
  if (eval_cmd->count("--out")) eval_opt.report = report_path;
  if (eval_cmd->count("--alpha-cut")) eval_opt.params.alpha_cut = eval_cut;
  if (eval_cmd->count("--ref-alpha-cut")) eval_opt.ref_alpha_cut = ref_cut;
  return cli::cmd_evaluate(eval_opt, std::cout, std::cerr);
}
