#pragma once

#define SHORTLIST_VERSION "1.0.0"
