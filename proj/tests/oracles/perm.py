import numpy as np, lightgbm as lgb
P=dict(num_iterations=4800,learning_rate=0.0035,num_leaves=11,max_depth=7,min_data_in_leaf=7,lambda_l2=0.0175,bagging_freq=5,bagging_fraction=0.66,feature_fraction=0.09,max_bin=64,min_data_in_bin=10,verbose=-1,objective='regression')
def cv(X,y,seed):
    rng=np.random.RandomState(seed); idx=rng.permutation(len(y)); fold=np.empty(len(y),int); fold[idx]=np.arange(len(y))%9
    rs=[]
    for f in range(9):
        tr=fold!=f; te=fold==f
        m=lgb.train(dict(P,seed=seed),lgb.Dataset(X[tr],y[tr]))
        p=m.predict(X[te]); rs.append(np.corrcoef(p,y[te])[0,1])
    return np.array(rs)
r=np.random.RandomState(7); n=540
x=np.arange(n)%5; X=x.reshape(-1,1).astype(float); y=0.1+0.2*x
print('clean folds min r', cv(X,y,1).min())
out=[]
for k in range(20):
    yp=r.permutation(y); out.append(np.nanmean(cv(X,yp,k)))
print(np.round(out,3), 'max|r|',np.max(np.abs(out)))
