#pragma once

// Umbrella header for the whole pipeline: trial ingestion, standardization,
// Gram-matrix spectra, the class-means classifier, the evaluation harness,
// the synthetic generator and the plot writers.

#include "classifier.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "jacobi.hpp"
#include "matrix.hpp"
#include "nuclear.hpp"
#include "parallel.hpp"
#include "plot.hpp"
#include "rng.hpp"
#include "signal.hpp"
#include "synth.hpp"
#include "trial.hpp"
