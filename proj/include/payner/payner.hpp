#pragma once

// Umbrella header.

#include "payner/types.hpp"
#include "payner/text.hpp"
#include "payner/validators.hpp"
#include "payner/tokenize.hpp"
#include "payner/formats.hpp"
#include "payner/spans.hpp"
#include "payner/gazetteer.hpp"
#include "payner/rng.hpp"
#include "payner/generator.hpp"
#include "payner/conll.hpp"
#include "payner/features.hpp"
#include "payner/lbfgs.hpp"
#include "payner/eval.hpp"
#include "payner/crf.hpp"
#include "payner/baseline.hpp"
#include "payner/tagger.hpp"
#include "payner/bench.hpp"
#include "payner/crossformat.hpp"
