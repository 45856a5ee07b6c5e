#pragma once

// Bibliographic-export toolkit: MEDLINE and Web-of-Science parsing, PMID
// linkage, 2-mode co-occurrence matrices, bounded citation networks, and
// SPC-weighted main-path analysis, with Pajek/SPSS/CSV export.

#include "citemesh/bigint.hpp"
#include "citemesh/citegraph.hpp"
#include "citemesh/common.hpp"
#include "citemesh/corpus.hpp"
#include "citemesh/csv.hpp"
#include "citemesh/mainpath.hpp"
#include "citemesh/matrix.hpp"
#include "citemesh/medline.hpp"
#include "citemesh/pajek.hpp"
#include "citemesh/pipeline.hpp"
#include "citemesh/spss.hpp"
#include "citemesh/stats.hpp"
#include "citemesh/text.hpp"
#include "citemesh/wos.hpp"
