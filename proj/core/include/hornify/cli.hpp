#pragma once
// Command-line driver. Subcommands:
//   translate --mode pi|xi IN.dlo [-o OUT.rules]
//   mark IN.dlo|IN.rules [--all] [--minimal]
//   transpose IN.rules --marking LIST [-o OUT.rules]
//   rewrite IN.dlo [-o OUT.dlo] [--normalize]
//   check IN.dlo DATA.facts [--depth N] [--budget N] [--witness]
//   stats DIR [--format csv|json]
//
// Exit codes: 0 success/AGREE, 2 parse or validation error, 3 not markable,
// 4 INCONCLUSIVE, 5 DISAGREE. The HORNIFY_BUDGET environment variable
// overrides the default derived-atom budget (flags take precedence).

namespace hornify {

int run_cli(int argc, const char* const* argv);

}  // namespace hornify
