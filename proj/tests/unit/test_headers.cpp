#include <catch_amalgamated.hpp>

#include "psylex/report.hpp"
#include "psylex/service/config.hpp"
#include "psylex/service/http_api.hpp"
#include "psylex/text/scoring.hpp"
#include "psylex/corpus/matrix_io.hpp"
#include "psylex/translate/http_provider.hpp"
#include "psylex/translate/sampling.hpp"

TEST_CASE("headers compile together") { SUCCEED(); }
