# keeps the tests directory importable (test_acceptance reuses the report
# recount oracle from test_report)
