#pragma once

#include "copent/copent.hpp"
#include "copent/criteria.hpp"
#include "copent/dataset.hpp"
#include "copent/dcor.hpp"
#include "copent/dhsic.hpp"
#include "copent/digamma.hpp"
#include "copent/ecd.hpp"
#include "copent/kdtree.hpp"
#include "copent/knn_entropy.hpp"
#include "copent/matrix.hpp"
#include "copent/report.hpp"
#include "copent/repro.hpp"
#include "copent/select.hpp"
