"""Frozen reference values; regenerate with tools/make_oracles.py (mpmath, 30 digits)."""
ZERO_ORDINATES = [14.134725141734695, 21.022039638771556, 25.01085758014569, 30.424876125859512, 32.93506158773919, 37.586178158825675, 40.9187190121475, 43.327073280915, 48.00515088116716, 49.7738324776723, 52.970321477714464, 56.44624769706339, 59.34704400260235, 60.83177852460981, 65.1125440480816, 67.07981052949417, 69.54640171117398, 72.0671576744819, 75.70469069908393, 77.1448400688748]
ZETA_PRIME_RHO1 = (0.783296511867031+0.12469982974817109j)
XI_HALF = 0.4971207781883141
F_AT_1 = 0.7628739783668902
V_AT_1 = -0.7909883534346632
GAMMA_ZETA_HALF = -2.5884109728267854
INDUCED_X03 = (0.880307033693384, 0.8341561757263565)
GRAM12_ALPHA0_ABS = 55012.494862983905
MINIMAL_ALPHA_2 = 0.23011051714616812
SCHWARTZ_MARGINS = {(1, 10, 0): -9.639089422466371e+49, (1, 2, 2): 1.0}
SIN_MELLIN = {(0.3+2j): (7.30931187111923-9.624708965425786j), (0.5+14.134725141734695j): (3.651874329838555e-06-3.5949889143311337e-07j), (2.5-4j): (-4734.1173087196585+8637.348026392323j), (-1.5+3j): (-3.0312603046067297-0.3981716934461437j), (1.1+0.5j): (-3.956138269191297+0.16710344364595103j), (0.02+7j): (772.6377457191695+33104.17506798758j)}
FLOW = {((0.3+5j), 0.2): ((-1457.4772270769756+4328.852359280384j), (3423.630289257781+8381.30996275225j)), ((0.7+3j), -0.3): ((-47.71283999204646-169.6479154411863j), (37.510530175991136-90.60284573286727j)), ((0.2+8j), 0.5): ((1123524.0743982964+219744.34809255973j), (2306840.7229792112-2778841.8957432676j)), ((0.9+2j), 0.1): ((-50.36205804923326+10.70155678437388j), (-10.803257254551475-15.266186853077718j)), ((0.4+12j), -0.5): ((-181104336.2350714-43255234.10297649j), (-284656720.93895954+5802184.657844474j))}
M_AT_1_RICHARDSON = -3.141592653589793
