# -*- coding: utf-8 -*-
"""
prolog 패키지 초기화 파일
항 표현(terms), 파서(parser), SLD 해석 머신과 엔진(engine), 오류(errors)로 구성됩니다.
"""
