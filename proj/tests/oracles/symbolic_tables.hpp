// Generated by gen_symbolic_tables.py. Do not edit by hand.
#pragma once

namespace bardina::oracle {

struct SymbolicPoint {
    double x1, x2, value;
};

// kBilinearUV: (x1, x2, value)
inline constexpr SymbolicPoint kBilinearUV[] = {
    {0.19634954084936207740, -0.75000000000000000000, 4.0293323985586172767},
    {0.19634954084936207740, -0.25000000000000000000, 1.0283114820465088136},
    {0.19634954084936207740, 0.25000000000000000000, 1.0283114820465088136},
    {0.19634954084936207740, 0.75000000000000000000, 4.0293323985586172767},
    {0.98174770424681038702, -0.75000000000000000000, 1.0219552727109765003},
    {0.98174770424681038702, -0.25000000000000000000, -2.6735912551553390215},
    {0.98174770424681038702, 0.25000000000000000000, -2.6735912551553390215},
    {0.98174770424681038702, 0.75000000000000000000, 1.0219552727109765003},
    {1.7671458676442586966, -0.75000000000000000000, -0.22374111998573457049},
    {1.7671458676442586966, -0.25000000000000000000, -4.2069695754904279087},
    {1.7671458676442586966, 0.25000000000000000000, -4.2069695754904279087},
    {1.7671458676442586966, 0.75000000000000000000, -0.22374111998573457049},
    {2.5525440310417070063, -0.75000000000000000000, 2.7836360058619062059},
    {2.5525440310417070063, -0.25000000000000000000, -0.50506683828858007360},
    {2.5525440310417070063, 0.25000000000000000000, -0.50506683828858007360},
    {2.5525440310417070063, 0.75000000000000000000, 2.7836360058619062059},
};

// kBilinearVV: (x1, x2, value)
inline constexpr SymbolicPoint kBilinearVV[] = {
    {0.19634954084936207740, -0.75000000000000000000, -1.3498560133815471245},
    {0.19634954084936207740, -0.25000000000000000000, -0.42603428993769759743},
    {0.19634954084936207740, 0.25000000000000000000, 0.42603428993769759743},
    {0.19634954084936207740, 0.75000000000000000000, 1.3498560133815471245},
    {0.98174770424681038702, -0.75000000000000000000, -3.2588406947566091437},
    {0.98174770424681038702, -0.25000000000000000000, -1.0285377608035809590},
    {0.98174770424681038702, 0.25000000000000000000, 1.0285377608035809590},
    {0.98174770424681038702, 0.75000000000000000000, 3.2588406947566091437},
    {1.7671458676442586966, -0.75000000000000000000, 1.3498560133815471245},
    {1.7671458676442586966, -0.25000000000000000000, 0.42603428993769759743},
    {1.7671458676442586966, 0.25000000000000000000, -0.42603428993769759743},
    {1.7671458676442586966, 0.75000000000000000000, -1.3498560133815471245},
    {2.5525440310417070063, -0.75000000000000000000, 3.2588406947566091437},
    {2.5525440310417070063, -0.25000000000000000000, 1.0285377608035809590},
    {2.5525440310417070063, 0.25000000000000000000, -1.0285377608035809590},
    {2.5525440310417070063, 0.75000000000000000000, -3.2588406947566091437},
};

// kMmsSteadyForcing: (x1, x2, value)
inline constexpr SymbolicPoint kMmsSteadyForcing[] = {
    {0.10000000000000000000, -0.60000000000000000000, 16.828009282442109942},
    {0.10000000000000000000, -0.20000000000000000000, -12.168003474369002422},
    {0.10000000000000000000, 0.30000000000000000000, -30.478236941608793836},
    {0.10000000000000000000, 0.70000000000000000000, 7.6062017086477601879},
    {0.70000000000000000000, -0.60000000000000000000, -6.3690462599357719034},
    {0.70000000000000000000, -0.20000000000000000000, 19.770006412385520076},
    {0.70000000000000000000, 0.30000000000000000000, 5.5585334023138368142},
    {0.70000000000000000000, 0.70000000000000000000, -31.504928488356377610},
    {1.3000000000000000000, -0.60000000000000000000, 3.7884629639392207227},
    {1.3000000000000000000, -0.20000000000000000000, -44.155169998576826762},
    {1.3000000000000000000, 0.30000000000000000000, -9.4685068459657161415},
    {1.3000000000000000000, 0.70000000000000000000, 29.807602065502475606},
    {2.2000000000000000000, -0.60000000000000000000, -15.762633659752510916},
    {2.2000000000000000000, -0.20000000000000000000, 41.290333882271470336},
    {2.2000000000000000000, 0.30000000000000000000, 33.539048053302645094},
    {2.2000000000000000000, 0.70000000000000000000, -19.375643403467104394},
};

// kMmsUnsteadyForcingT07: (x1, x2, value)
inline constexpr SymbolicPoint kMmsUnsteadyForcingT07[] = {
    {0.10000000000000000000, -0.60000000000000000000, 19.513585528188913582},
    {0.10000000000000000000, -0.20000000000000000000, 8.0090000445457199290},
    {0.10000000000000000000, 0.30000000000000000000, -25.619137765359155722},
    {0.10000000000000000000, 0.70000000000000000000, -8.6107278902822890064},
    {0.70000000000000000000, -0.60000000000000000000, 4.9924292813702601334},
    {0.70000000000000000000, -0.20000000000000000000, -6.2651932533437368214},
    {0.70000000000000000000, 0.30000000000000000000, -21.936597482061367916},
    {0.70000000000000000000, 0.70000000000000000000, -25.690800482972664410},
    {1.3000000000000000000, -0.60000000000000000000, -8.8672254760348680437},
    {1.3000000000000000000, -0.20000000000000000000, -38.348611426303379781},
    {1.3000000000000000000, 0.30000000000000000000, 5.9919026488847587384},
    {1.3000000000000000000, 0.70000000000000000000, 37.438618410193204914},
    {2.2000000000000000000, -0.60000000000000000000, -11.759187308445480876},
    {2.2000000000000000000, -0.20000000000000000000, 29.816036628856694530},
    {2.2000000000000000000, 0.30000000000000000000, 27.484521109616259265},
    {2.2000000000000000000, 0.70000000000000000000, -14.397322471242904067},
};

// kMmsUnsteadyValueT07: (x1, x2, value)
inline constexpr SymbolicPoint kMmsUnsteadyValueT07[] = {
    {0.10000000000000000000, -0.60000000000000000000, 0.063114226545690918866},
    {0.10000000000000000000, -0.20000000000000000000, 0.35096131385281354497},
    {0.10000000000000000000, 0.30000000000000000000, 0.33522419024630222809},
    {0.10000000000000000000, 0.70000000000000000000, 0.025910405261451504265},
    {0.70000000000000000000, -0.60000000000000000000, 0.19761922372914446098},
    {0.70000000000000000000, -0.20000000000000000000, 1.0763731331135483073},
    {0.70000000000000000000, 0.30000000000000000000, 1.1135388165702446434},
    {0.70000000000000000000, 0.70000000000000000000, 0.097149589761115338832},
    {1.3000000000000000000, -0.60000000000000000000, 0.10955257184028047187},
    {1.3000000000000000000, -0.20000000000000000000, 0.60618502322849556665},
    {1.3000000000000000000, 0.30000000000000000000, 0.59040535842200280395},
    {1.3000000000000000000, 0.70000000000000000000, 0.047112969142580746424},
    {2.2000000000000000000, -0.60000000000000000000, -0.24281588304313450037},
    {2.2000000000000000000, -0.20000000000000000000, -1.3374664086107587060},
    {2.2000000000000000000, 0.30000000000000000000, -1.3258979350090592443},
    {2.2000000000000000000, 0.70000000000000000000, -0.10876070898394801281},
};

}  // namespace bardina::oracle
